use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{delta, gcd_diff, profile, residue, two_part, Relation};

pub(crate) fn check_len(v: &[i64]) -> Result<()> {
    if v.len() < 2 {
        return Err(Error::TooShort(v.len()));
    }
    Ok(())
}

pub(crate) fn check_pair(v: &[i64], w: &[i64]) -> Result<()> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch { left: v.len(), right: w.len() });
    }
    check_len(v)
}

/// Whether `v` and `w` are related under `r`.
pub fn equivalent(v: &[i64], w: &[i64], r: Relation) -> Result<bool> {
    check_pair(v, w)?;
    Ok(profile(v, r)? == profile(w, r)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A braid-equivalent vector (x,..,x,y,..,y) with `x_count` leading x's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoBlock {
    pub x: i64,
    pub y: i64,
    pub x_count: usize,
    pub first_block: Parity,
}

impl TwoBlock {
    pub fn vector(&self, m: usize) -> Vec<i64> {
        let mut v = vec![self.x; self.x_count];
        v.resize(m, self.y);
        v
    }
}

fn require_even(v: &[i64]) -> Result<()> {
    check_len(v)?;
    if v.len() % 2 != 0 {
        return Err(Error::Precondition(format!("length {} is odd", v.len())));
    }
    Ok(())
}

/// Two-block form of an even-length vector, when one exists.
pub fn two_block_form(v: &[i64]) -> Result<Option<TwoBlock>> {
    require_even(v)?;
    let m = v.len();
    let d = gcd_diff(v)?;
    let dl = delta(v)?;
    if d == 0 {
        return Ok(Some(TwoBlock { x: v[0], y: v[0], x_count: m, first_block: Parity::Even }));
    }
    if dl != 0 && dl.abs() != d {
        return Ok(None);
    }
    let c = residue(v[0], 2 * d);
    let count = v.iter().filter(|&&a| residue(a, 2 * d) == c).count();
    let other = residue(c + d, 2 * d);
    let (x, x_count, y) = if dl == 0 {
        (c, count, c + d)
    } else if count % 2 == 1 {
        (c, count, c - dl)
    } else {
        (other, m - count, other - dl)
    };
    let tb = TwoBlock {
        x,
        y,
        x_count,
        first_block: if x_count % 2 == 0 { Parity::Even } else { Parity::Odd },
    };
    if profile(&tb.vector(m), Relation::Braid)? != profile(v, Relation::Braid)? {
        return Err(Error::Precondition(format!("no consistent two-block split for {v:?}")));
    }
    Ok(Some(tb))
}

/// A classical tangle with endpoints colored by v exists (loops allowed or not).
pub fn closable_classical(v: &[i64]) -> Result<bool> {
    require_even(v)?;
    Ok(delta(v)? == 0)
}

/// A virtual tangle without closed loops exists.
pub fn closable_virtual_no_loops(v: &[i64]) -> Result<bool> {
    require_even(v)?;
    let dl = delta(v)?;
    let d2 = two_part(v)?;
    Ok(residue(dl, 2 * d2) == 0)
}

/// A virtual tangle possibly with closed loops exists.
pub fn closable_virtual_loops(v: &[i64]) -> Result<bool> {
    require_even(v)?;
    Ok(delta(v)? % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::Relation::*;

    #[test]
    fn worked_verdicts() {
        assert!(equivalent(&[2, -4, 11, 8, -1], &[5, 5, 2, 2, 8], Braid).unwrap());
        assert!(!equivalent(&[-1, 2, 2], &[0, 3, 2], Braid).unwrap());
        assert!(equivalent(&[-1, 2, 2], &[0, 3, 2], Tangle0).unwrap());
        assert!(equivalent(&[6, 10, 4], &[0, 0, 0], Tangle).unwrap());
        assert!(!equivalent(&[6, 10, 4], &[0, 0, 0], Tangle0).unwrap());
        assert!(!equivalent(&[1, -5, 4], &[10, 7, 7], Pure).unwrap());
        assert!(equivalent(&[1, -5, 4], &[7, 7, 10], Pure).unwrap());
        assert!(equivalent(&[1, -5, 4], &[-2, 1, 1], Vbraid).unwrap());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(equivalent(&[1, 2], &[1, 2, 3], Braid), Err(Error::LengthMismatch { .. })));
        assert!(matches!(equivalent(&[1], &[1], Braid), Err(Error::TooShort(1))));
        assert!(closable_classical(&[1, 2, 3]).is_err());
    }

    #[test]
    fn two_blocks() {
        assert_eq!(two_block_form(&[0, 1, 2, 5]).unwrap(), None);
        let tb = two_block_form(&[0, 0, 3, 0]).unwrap().unwrap();
        assert_eq!(tb.first_block, Parity::Odd);
        let tb = two_block_form(&[4, 4, 4, 4]).unwrap().unwrap();
        assert_eq!(tb.vector(4), vec![4, 4, 4, 4]);
        let tb = two_block_form(&[-4, 11, 8, -1]).unwrap();
        assert_eq!(tb, None);
        let tb = two_block_form(&[1, 4, 4, 1]).unwrap().unwrap();
        assert_eq!(tb.first_block, Parity::Even);
    }

    #[test]
    fn closability() {
        assert!(closable_classical(&[-1, 5, 19, 20, 6, -1]).unwrap());
        assert!(closable_classical(&[0, 0]).unwrap());
        assert!(!closable_classical(&[1, 0]).unwrap());
        assert!(!closable_virtual_no_loops(&[0, 2]).unwrap());
        assert!(closable_virtual_no_loops(&[0, 0, 1, 1]).unwrap());
        assert!(closable_virtual_no_loops(&[0, 4, 2, 2]).unwrap());
        assert!(closable_virtual_loops(&[0, 2]).unwrap());
        assert!(!closable_virtual_loops(&[1, 0]).unwrap());
        assert!(closable_virtual_loops(&[1, 1]).unwrap());
    }
}
