//! Fixture group constructors with fixed generator permutations, shared by
//! the CLI `--builtin` option and the test suites.

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ORDER_CAP};
use crate::perm::Perm;

fn build(degree: usize, gens: Vec<Perm>) -> PermGroup {
    PermGroup::enumerate(degree, gens, DEFAULT_ORDER_CAP).expect("builtin group enumerates")
}

fn cyclic_generators(n: usize) -> (usize, Vec<Perm>) {
    assert!(n >= 1);
    if n == 1 {
        return (1, vec![]);
    }
    let cycle: Vec<usize> = (0..n).collect();
    (n, vec![Perm::from_cycles(n, &[&cycle]).unwrap()])
}

/// C_n acting by rotation on n points.
pub fn cyclic(n: usize) -> PermGroup {
    let (degree, gens) = cyclic_generators(n);
    build(degree, gens)
}

fn dihedral_generators(order: usize) -> Result<(usize, Vec<Perm>)> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(Error::UnknownBuiltin(format!("dihedral:{order}")));
    }
    let n = order / 2;
    let rot: Vec<usize> = (0..n).collect();
    let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    Ok((n, vec![Perm::from_cycles(n, &[&rot]).unwrap(), refl]))
}

/// Dihedral group of the given order `2n`, acting on `n` points.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    let (degree, gens) = dihedral_generators(order)?;
    Ok(build(degree, gens))
}

/// Q8 acting on its eight elements {1, i, j, k, −1, −i, −j, −k} by left
/// multiplication by i and j.
pub fn quaternion8() -> PermGroup {
    let i = Perm::from_images(vec![1, 4, 3, 6, 5, 0, 7, 2]).unwrap();
    let j = Perm::from_images(vec![2, 7, 4, 1, 6, 3, 0, 5]).unwrap();
    build(8, vec![i, j])
}

fn elementary_abelian_generators(p: usize, k: usize) -> Result<(usize, Vec<Perm>)> {
    if !crate::group::is_prime(p as u64) || k == 0 {
        return Err(Error::UnknownBuiltin(format!("elemab:{p},{k}")));
    }
    let degree = p * k;
    let gens = (0..k)
        .map(|b| {
            let cycle: Vec<usize> = (0..p).map(|i| b * p + i).collect();
            Perm::from_cycles(degree, &[&cycle]).unwrap()
        })
        .collect();
    Ok((degree, gens))
}

/// Elementary abelian group (Z/p)^k as k disjoint p-cycles on p·k points.
pub fn elementary_abelian(p: usize, k: usize) -> Result<PermGroup> {
    let (degree, gens) = elementary_abelian_generators(p, k)?;
    Ok(build(degree, gens))
}

/// The Klein four group in its regular action on 4 points.
pub fn klein() -> PermGroup {
    build(
        4,
        vec![
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ],
    )
}

/// The symmetric group on 3 points.
pub fn s3() -> PermGroup {
    build(
        3,
        vec![
            Perm::from_cycles(3, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
        ],
    )
}

/// The Frobenius group of order 20 = C5 ⋊ C4, acting on 5 points: a 5-cycle
/// and the automorphism x ↦ 2x mod 5.
pub fn frobenius20() -> PermGroup {
    build(
        5,
        vec![
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            Perm::from_images(vec![0, 2, 4, 1, 3]).unwrap(),
        ],
    )
}

/// Parses a builtin spec string: `cyclic:n`, `dihedral:2n`, `quaternion:8`,
/// `elemab:p,k`, `klein`, `s3`, `frobenius:20`.
pub fn from_spec(spec: &str) -> Result<PermGroup> {
    from_spec_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn from_spec_with_cap(spec: &str, order_cap: usize) -> Result<PermGroup> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let parse = |s: Option<&str>| -> Result<usize> {
        s.and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::UnknownBuiltin(spec.to_string()))
    };
    let (degree, gens) = match name {
        "cyclic" => {
            let n = parse(arg)?;
            if n == 0 {
                return Err(Error::UnknownBuiltin(spec.to_string()));
            }
            cyclic_generators(n)
        }
        "dihedral" => dihedral_generators(parse(arg)?)?,
        "quaternion" => {
            if parse(arg)? != 8 {
                return Err(Error::UnknownBuiltin(spec.to_string()));
            }
            return Ok(quaternion8());
        }
        "elemab" => {
            let a = arg.ok_or_else(|| Error::UnknownBuiltin(spec.to_string()))?;
            let (p, k) = a
                .split_once(',')
                .ok_or_else(|| Error::UnknownBuiltin(spec.to_string()))?;
            let p: usize = p.parse().map_err(|_| Error::UnknownBuiltin(spec.to_string()))?;
            let k: usize = k.parse().map_err(|_| Error::UnknownBuiltin(spec.to_string()))?;
            elementary_abelian_generators(p, k)?
        }
        "klein" if arg.is_none() => return Ok(klein()),
        "s3" if arg.is_none() => return Ok(s3()),
        "frobenius" => {
            if parse(arg)? != 20 {
                return Err(Error::UnknownBuiltin(spec.to_string()));
            }
            return Ok(frobenius20());
        }
        _ => return Err(Error::UnknownBuiltin(spec.to_string())),
    };
    PermGroup::enumerate(degree, gens, order_cap)
}
