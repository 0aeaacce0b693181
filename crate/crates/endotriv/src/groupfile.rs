//! The text format for permutation groups: line 1 is the degree, every
//! following non-empty line one generator in one-line image notation, `#`
//! starts a comment line.

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ORDER_CAP};
use crate::perm::Perm;

pub fn parse_group_text(text: &str) -> Result<PermGroup> {
    parse_group_text_with_cap(text, DEFAULT_ORDER_CAP)
}

pub fn parse_group_text_with_cap(text: &str, order_cap: usize) -> Result<PermGroup> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let degree: usize = lines
        .next()
        .ok_or_else(|| Error::GroupFile("missing degree line".into()))?
        .parse()
        .map_err(|_| Error::GroupFile("degree is not a nonnegative integer".into()))?;
    if degree == 0 {
        return Err(Error::GroupFile("degree must be positive".into()));
    }
    let mut generators = Vec::new();
    for line in lines {
        let images: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse()
                    .map_err(|_| Error::GroupFile(format!("bad image entry '{tok}'")))
            })
            .collect::<Result<_>>()?;
        if images.len() != degree {
            return Err(Error::GroupFile(format!(
                "generator has {} images, expected {degree}",
                images.len()
            )));
        }
        generators.push(Perm::from_images(images)?);
    }
    PermGroup::enumerate(degree, generators, order_cap)
}
