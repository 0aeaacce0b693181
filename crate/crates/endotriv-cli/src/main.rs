//! Batch command-line surface: group ingestion, one computation per
//! invocation, deterministic JSON (or TSV for flat tables) on stdout.
//!
//! Exit codes: 0 success, 2 validation error, 3 budget guard.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use endotriv::biset;
use endotriv::borel_smith::{
    artin_system, borel_smith_system, classify_endotrivial_group, dade_omega_invariants,
    ConditionSystem, RowProvenance,
};
use endotriv::burnside::{
    lefschetz_surjectivity_check, marks_of, table_of_marks, tornehave_check, units,
    ConstructiveOutcome,
};
use endotriv::complex::{
    build_from_hmarks, h_marks, lefschetz, verify_endosplit_trivial_vfg, verify_endotrivial,
    DEFAULT_TENSOR_BUDGET,
};
use endotriv::error::Error;
use endotriv::group::{factorize, is_p_power, is_prime, GroupData};
use endotriv::groupfile::parse_group_text_with_cap;
use endotriv::intmat::{AbelianInvariants, IntegerLattice};
use endotriv::superclass::{PSubposet, SuperclassFn};

#[derive(Parser)]
#[command(name = "endotriv", version, about = "Endotrivial-complex invariants of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct GroupArgs {
    /// Group file: degree line, then one generator per line in image notation
    #[arg(long, conflicts_with = "builtin")]
    group: Option<String>,
    /// Builtin group: cyclic:n | dihedral:2n | quaternion:8 | elemab:p,k |
    /// klein | s3 | frobenius:20
    #[arg(long)]
    builtin: Option<String>,
    /// Cap on the enumerated group order
    #[arg(long, default_value_t = endotriv::group::DEFAULT_ORDER_CAP)]
    order_cap: usize,
    /// Cap on the number of enumerated subgroups
    #[arg(long, default_value_t = endotriv::group::DEFAULT_SUBGROUP_CAP)]
    subgroup_cap: usize,
    /// Output format (tsv only for flat tables: cfb rows, burnside marks)
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroup classes, the p-subposet, subconjugacy, and the Möbius matrix
    Lattice {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short)]
        p: u64,
    },
    /// Borel-Smith condition system and lattice (--artin adds the oriented
    /// Artin congruences, yielding CF_ba+)
    Cfb {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short)]
        p: u64,
        #[arg(long)]
        artin: bool,
    },
    /// Invariant factors of the Dade quotient D^Ω = CF/CF_ba+
    Dade {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short)]
        p: u64,
    },
    /// Free rank and torsion of the group of endotrivial complexes
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short)]
        p: u64,
    },
    /// Build the syzygy tensor product with the given homology marks and
    /// report term data, mark verification, and endotriviality verdicts
    Complex {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short)]
        p: u64,
        /// Comma-separated integer marks over the p-classes
        #[arg(long, allow_hyphen_values = true)]
        hmarks: String,
        #[arg(long, default_value_t = DEFAULT_TENSOR_BUDGET)]
        budget: usize,
    },
    /// Table of marks, Burnside units, Tornehave equality, and Lefschetz
    /// surjectivity (p-groups only)
    Burnside {
        #[command(flatten)]
        group: GroupArgs,
        /// Optional: the prime is inferred from the group order
        #[arg(short)]
        p: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_TENSOR_BUDGET)]
        budget: usize,
    },
    /// Apply a biset operation to a superclass function
    Biset {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(short)]
        p: u64,
        #[arg(long, value_enum)]
        op: BisetOp,
        /// The subgroup (res/ind) or normal subgroup (inf/def), as a group
        /// file whose elements must lie in the main group
        #[arg(long, conflicts_with = "sub_builtin")]
        sub: Option<String>,
        #[arg(long)]
        sub_builtin: Option<String>,
        /// Comma-separated integer values over the source's p-classes
        #[arg(long, allow_hyphen_values = true)]
        values: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BisetOp {
    Res,
    Inf,
    Def,
    Ind,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BudgetExceeded { .. }
                | Error::OrderCapExceeded { .. }
                | Error::SubgroupCapExceeded(_)
                | Error::UnitGuardExceeded(_) => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn load_group(args: &GroupArgs) -> Result<(Arc<GroupData>, String), Error> {
    let (group, source) = match (&args.group, &args.builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::GroupFile(format!("{path}: {e}")))?;
            (
                parse_group_text_with_cap(&text, args.order_cap)?,
                format!("file:{path}"),
            )
        }
        (None, Some(spec)) => (
            endotriv::builtins::from_spec_with_cap(spec, args.order_cap)?,
            format!("builtin:{spec}"),
        ),
        _ => {
            return Err(Error::GroupFile(
                "exactly one of --group or --builtin is required".into(),
            ))
        }
    };
    Ok((
        Arc::new(GroupData::with_subgroup_cap(group, args.subgroup_cap)?),
        source,
    ))
}

fn check_prime(p: u64) -> Result<u64, Error> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

fn parse_values(text: &str, want: usize) -> Result<Vec<i64>, Error> {
    let values: Vec<i64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::GroupFile(format!("bad integer '{t}' in value list")))
        })
        .collect::<Result<_, _>>()?;
    if values.len() != want {
        return Err(Error::LengthMismatch {
            got: values.len(),
            want,
        });
    }
    Ok(values)
}

fn envelope(command: &str, source: &str, data: &GroupData, p: u64, payload: Value) -> Value {
    let mut doc = json!({
        "schema": "endotriv/1",
        "command": command,
        "group": {
            "source": source,
            "degree": data.group.degree(),
            "order": data.group.order(),
        },
        "p": p,
    });
    for (k, v) in payload.as_object().expect("payload is an object") {
        doc[k] = v.clone();
    }
    doc
}

/// The class-ordering legend every document embeds: one entry per p-class in
/// canonical order, with subgroup order, class size, and generator words.
fn legend(data: &GroupData, poset: &PSubposet) -> Value {
    let entries: Vec<Value> = (0..poset.len())
        .map(|i| {
            let rep = poset.reps[i];
            let class = &data.lattice.classes[data.lattice.class_of[rep]];
            let gens: Vec<String> = data
                .subgroup_generators(rep)
                .iter()
                .map(|&e| data.group.word_string(e))
                .collect();
            json!({
                "index": i,
                "order": data.lattice.subgroups[rep].order,
                "class_size": class.members.len(),
                "generators": gens,
            })
        })
        .collect();
    json!(entries)
}

fn full_legend(data: &GroupData) -> Value {
    let entries: Vec<Value> = data
        .lattice
        .classes
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let gens: Vec<String> = data
                .subgroup_generators(class.rep)
                .iter()
                .map(|&e| data.group.word_string(e))
                .collect();
            json!({
                "index": i,
                "order": data.lattice.subgroups[class.rep].order,
                "class_size": class.members.len(),
                "generators": gens,
            })
        })
        .collect();
    json!(entries)
}

fn invariants_json(inv: &AbelianInvariants) -> Value {
    json!({
        "free_rank": inv.free_rank,
        "torsion": inv.torsion_u64(),
    })
}

fn lattice_json(lat: &IntegerLattice) -> Value {
    let basis: Vec<Vec<String>> = (0..lat.basis.cols)
        .map(|c| lat.basis.col(c).iter().map(|x| x.to_string()).collect())
        .collect();
    json!({
        "ambient_rank": lat.ambient_rank,
        "rank": lat.rank(),
        "basis_columns": basis,
        "index": lat.index_in_ambient().map(|d| d.to_string()),
    })
}

fn provenance_json(p: &RowProvenance) -> Value {
    match p {
        RowProvenance::ElementaryAbelianRank2 { s, t } => {
            json!({"kind": "elementary_abelian_rank2", "s_class": s, "t_class": t})
        }
        RowProvenance::CyclicOddP { s, t } => {
            json!({"kind": "cyclic_odd_p", "s_class": s, "t_class": t})
        }
        RowProvenance::CyclicOrder4 { s, shat, t } => {
            json!({"kind": "cyclic_order4", "s_class": s, "shat_class": shat, "t_class": t})
        }
        RowProvenance::Quaternion8 { s, shat, t } => {
            json!({"kind": "quaternion8", "s_class": s, "shat_class": shat, "t_class": t})
        }
        RowProvenance::Artin {
            l,
            k,
            h_order,
            q,
            r,
            kernel_exp,
        } => json!({
            "kind": "artin",
            "l_class": l,
            "k_class": k,
            "h_order": h_order,
            "q": q,
            "r": r,
            "kernel_exp": kernel_exp,
        }),
    }
}

fn conditions_json(sys: &ConditionSystem) -> Value {
    json!({
        "equalities": sys.equalities.iter().map(|(row, prov)| json!({
            "row": row,
            "provenance": provenance_json(prov),
        })).collect::<Vec<_>>(),
        "congruences": sys.congruences.iter().map(|(row, m, prov)| json!({
            "row": row,
            "modulus": m,
            "provenance": provenance_json(prov),
        })).collect::<Vec<_>>(),
    })
}

fn conditions_tsv(sys: &ConditionSystem) -> String {
    let mut out = String::from("#kind\tmodulus\tcoefficients\n");
    for (row, _) in &sys.equalities {
        let coeffs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("equality\t0\t{}\n", coeffs.join(",")));
    }
    for (row, m, _) in &sys.congruences {
        let coeffs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("congruence\t{m}\t{}\n", coeffs.join(",")));
    }
    out.pop();
    out
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Lattice { group, p } => {
            let p = check_prime(p)?;
            let (data, source) = load_group(&group)?;
            if group.format == Format::Tsv {
                return Err(Error::GroupFile("lattice has no tsv form".into()));
            }
            let poset = PSubposet::new(&data, p)?;
            let classes: Vec<Value> = data
                .lattice
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "order": data.lattice.subgroups[c.rep].order,
                        "class_size": c.members.len(),
                        "normalizer_order": data.lattice.subgroups
                            [data.lattice.normalizers[c.rep]].order,
                    })
                })
                .collect();
            let payload = json!({
                "legend": legend(&data, &poset),
                "subgroup_classes": classes,
                "p_subposet": {
                    "class_count": poset.len(),
                    "subconjugacy": poset.subconjugacy.iter().map(|row| {
                        row.iter().map(|&b| u8::from(b)).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                    "mobius": poset.mobius,
                },
            });
            Ok(envelope("lattice", &source, &data, p, payload).to_string())
        }
        Command::Cfb { group, p, artin } => {
            let p = check_prime(p)?;
            let (data, source) = load_group(&group)?;
            let poset = PSubposet::new(&data, p)?;
            let mut sys = borel_smith_system(&data, &poset)?;
            if artin {
                sys = sys.merge(&artin_system(&data, &poset)?);
            }
            if group.format == Format::Tsv {
                return Ok(conditions_tsv(&sys));
            }
            let lat = sys.solution_lattice()?;
            let payload = json!({
                "legend": legend(&data, &poset),
                "artin": artin,
                "conditions": conditions_json(&sys),
                "lattice": lattice_json(&lat),
            });
            Ok(envelope("cfb", &source, &data, p, payload).to_string())
        }
        Command::Dade { group, p } => {
            let p = check_prime(p)?;
            let (data, source) = load_group(&group)?;
            if group.format == Format::Tsv {
                return Err(Error::GroupFile("dade has no tsv form".into()));
            }
            let poset = PSubposet::new(&data, p)?;
            let inv = dade_omega_invariants(&data, &poset)?;
            let payload = json!({
                "legend": legend(&data, &poset),
                "invariants": invariants_json(&inv),
            });
            Ok(envelope("dade", &source, &data, p, payload).to_string())
        }
        Command::Classify { group, p } => {
            let p = check_prime(p)?;
            let (data, source) = load_group(&group)?;
            if group.format == Format::Tsv {
                return Err(Error::GroupFile("classify has no tsv form".into()));
            }
            let poset = PSubposet::new(&data, p)?;
            let inv = classify_endotrivial_group(&data, &poset)?;
            let payload = json!({
                "legend": legend(&data, &poset),
                "free_rank": inv.free_rank,
                "torsion": inv.torsion_u64(),
            });
            Ok(envelope("classify", &source, &data, p, payload).to_string())
        }
        Command::Complex {
            group,
            p,
            hmarks,
            budget,
        } => {
            let p = check_prime(p)?;
            let (data, source) = load_group(&group)?;
            if group.format == Format::Tsv {
                return Err(Error::GroupFile("complex has no tsv form".into()));
            }
            let poset = PSubposet::new(&data, p)?;
            let f = SuperclassFn::new(p, parse_values(&hmarks, poset.len())?);
            let b = poset.mobius_inversion(&f)?;
            let complex = build_from_hmarks(&data, &poset, &f, budget)?;
            let report = h_marks(&complex, &poset)?;
            let terms: Vec<Value> = complex
                .terms
                .iter()
                .map(|(&deg, set)| {
                    let gen_images: Vec<Vec<usize>> = data
                        .group
                        .generators()
                        .iter()
                        .map(|g| {
                            let gi = data.group.element_index(g).unwrap();
                            set.action[gi].clone()
                        })
                        .collect();
                    json!({
                        "degree": deg,
                        "points": set.points,
                        "generator_images": gen_images,
                    })
                })
                .collect();
            let differentials: Vec<Value> = complex
                .terms
                .keys()
                .filter(|&&deg| complex.term_dim(deg) > 0 && complex.term_dim(deg - 1) > 0)
                .map(|&deg| {
                    let d = complex.differential(deg);
                    let rows: Vec<Vec<u64>> = (0..d.rows)
                        .map(|r| (0..d.cols).map(|c| d.at(r, c)).collect())
                        .collect();
                    json!({"degree": deg, "matrix": rows})
                })
                .collect();
            let hmark_report: Vec<Value> = report
                .per_class
                .iter()
                .enumerate()
                .map(|(i, ch)| {
                    json!({
                        "class": i,
                        "homology": ch.homology.iter().map(|&(d, dim)| json!([d, dim])).collect::<Vec<_>>(),
                        "concentrated": ch.concentrated,
                        "h_mark": ch.h_mark,
                    })
                })
                .collect();
            let lefschetz_json = if is_p_power(data.group.order(), p) {
                let coeffs = lefschetz(&complex)?;
                let table = table_of_marks(&data);
                let marks = marks_of(
                    &table,
                    &endotriv::burnside::BurnsideElement {
                        coefficients: coeffs.clone(),
                    },
                );
                json!({"coefficients": coeffs, "marks": marks})
            } else {
                Value::Null
            };
            let payload = json!({
                "legend": legend(&data, &poset),
                "hmarks": f.values,
                "omega_coefficients": b.values,
                "terms": terms,
                "differentials": differentials,
                "hmark_report": hmark_report,
                "endotrivial": verify_endotrivial(&complex, &poset)?,
                "endosplit_trivial_vfg": verify_endosplit_trivial_vfg(&complex, &poset)?,
                "lefschetz": lefschetz_json,
            });
            Ok(envelope("complex", &source, &data, p, payload).to_string())
        }
        Command::Burnside { group, p, budget } => {
            let (data, source) = load_group(&group)?;
            let factors = factorize(data.group.order());
            let inferred = match factors.as_slice() {
                [(q, _)] => *q,
                _ => return Err(Error::NotPGroup),
            };
            let p = match p {
                Some(p) => {
                    let p = check_prime(p)?;
                    if p != inferred {
                        return Err(Error::NotPGroup);
                    }
                    p
                }
                None => inferred,
            };
            let table = table_of_marks(&data);
            if group.format == Format::Tsv {
                let mut out = String::from("#marks_row_per_class\n");
                for row in &table {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    out.push_str(&cells.join("\t"));
                    out.push('\n');
                }
                out.pop();
                return Ok(out);
            }
            let poset = PSubposet::new(&data, p)?;
            let unit_list = units(&data, &table)?;
            let units_json: Vec<Value> = unit_list
                .iter()
                .map(|u| {
                    json!({
                        "coefficients": u.coefficients,
                        "marks": marks_of(&table, u),
                    })
                })
                .collect();
            let surjectivity = lefschetz_surjectivity_check(&data, &poset, budget)?;
            let per_unit: Vec<Value> = surjectivity
                .per_unit
                .iter()
                .map(|(marks, f, outcome)| {
                    json!({
                        "unit_marks": marks,
                        "borel_smith_preimage": f.values,
                        "constructive": match outcome {
                            ConstructiveOutcome::Confirmed => "confirmed",
                            ConstructiveOutcome::SkippedBudget => "skipped_budget",
                            ConstructiveOutcome::SkippedNonEndotrivial =>
                                "skipped_non_endotrivial",
                        },
                    })
                })
                .collect();
            let payload = json!({
                "legend": full_legend(&data),
                "table_of_marks": table,
                "units": units_json,
                "tornehave": tornehave_check(&data, &poset)?,
                "lefschetz_surjectivity": {
                    "pass": surjectivity.pass,
                    "per_unit": per_unit,
                },
            });
            Ok(envelope("burnside", &source, &data, p, payload).to_string())
        }
        Command::Biset {
            group,
            p,
            op,
            sub,
            sub_builtin,
            values,
        } => {
            let p = check_prime(p)?;
            let (data, source) = load_group(&group)?;
            if group.format == Format::Tsv {
                return Err(Error::GroupFile("biset has no tsv form".into()));
            }
            let poset = PSubposet::new(&data, p)?;
            let sub_group = match (&sub, &sub_builtin) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::GroupFile(format!("{path}: {e}")))?;
                    parse_group_text_with_cap(&text, group.order_cap)?
                }
                (None, Some(spec)) => endotriv::builtins::from_spec(spec)?,
                _ => {
                    return Err(Error::GroupFile(
                        "exactly one of --sub or --sub-builtin is required".into(),
                    ))
                }
            };
            if sub_group.degree() != data.group.degree() {
                return Err(Error::GroupFile(
                    "subgroup degree does not match the main group".into(),
                ));
            }
            let mut members: Vec<usize> = sub_group
                .elements()
                .iter()
                .map(|e| {
                    data.group
                        .element_index(e)
                        .ok_or_else(|| Error::GroupFile("subgroup element not in group".into()))
                })
                .collect::<Result<_, _>>()?;
            members.sort_unstable();
            let sub_idx = data
                .lattice
                .subgroup_index(&members)
                .ok_or(Error::NotContained)?;

            let (source_legend, target_legend, input, output) = match op {
                BisetOp::Res => {
                    let ctx = biset::subgroup_context(&data, p, sub_idx)?;
                    let f = SuperclassFn::new(p, parse_values(&values, poset.len())?);
                    let out = biset::res(&data, &poset, &ctx, &f)?;
                    (
                        legend(&data, &poset),
                        legend(&ctx.data, &ctx.poset),
                        f.values,
                        out.values,
                    )
                }
                BisetOp::Ind => {
                    let ctx = biset::subgroup_context(&data, p, sub_idx)?;
                    let f = SuperclassFn::new(p, parse_values(&values, ctx.poset.len())?);
                    let out = biset::ind(&data, &poset, &ctx, sub_idx, &f)?;
                    (
                        legend(&ctx.data, &ctx.poset),
                        legend(&data, &poset),
                        f.values,
                        out.values,
                    )
                }
                BisetOp::Inf => {
                    let ctx = biset::quotient_context(&data, p, sub_idx)?;
                    let f = SuperclassFn::new(p, parse_values(&values, ctx.poset.len())?);
                    let out = biset::inf(&data, &poset, &ctx, &f)?;
                    (
                        legend(&ctx.data, &ctx.poset),
                        legend(&data, &poset),
                        f.values,
                        out.values,
                    )
                }
                BisetOp::Def => {
                    let ctx = biset::quotient_context(&data, p, sub_idx)?;
                    let f = SuperclassFn::new(p, parse_values(&values, poset.len())?);
                    let out = biset::def(&data, &poset, &ctx, sub_idx, &f)?;
                    (
                        legend(&data, &poset),
                        legend(&ctx.data, &ctx.poset),
                        f.values,
                        out.values,
                    )
                }
            };
            let payload = json!({
                "op": match op {
                    BisetOp::Res => "res",
                    BisetOp::Inf => "inf",
                    BisetOp::Def => "def",
                    BisetOp::Ind => "ind",
                },
                "source_legend": source_legend,
                "target_legend": target_legend,
                "input": input,
                "output": output,
            });
            Ok(envelope("biset", &source, &data, p, payload).to_string())
        }
    }
}
