//! Canonical representatives and the constructive braid normal form.

mod normal;

use serde::Serialize;

use crate::decide::check_len;
use crate::error::{ck, Error, Result};
use crate::invariants::{delta, gcd_diff, profile, residue, two_part, GcdPart, Relation};

pub use normal::{normal_form_word, triple_reduce};

fn count_class(v: &[i64], c: i64, modulus: i64) -> usize {
    v.iter().filter(|&&a| residue(a, modulus) == residue(c, modulus)).count()
}

fn block(parts: &[(i64, usize)]) -> Vec<i64> {
    parts.iter().flat_map(|&(x, n)| std::iter::repeat(x).take(n)).collect()
}

/// Classical braid or tangle0 family with gap `dd` (d or d_2), nontrivial v.
fn classical_gap_rep(v: &[i64], dd: i64) -> Result<Vec<i64>> {
    let m = v.len();
    let dl = delta(v)?;
    let two = ck(dd.checked_mul(2), "representative")?;
    let sub = |a: i64, b: i64| ck(a.checked_sub(b), "representative");
    let add = |a: i64, b: i64| ck(a.checked_add(b), "representative");
    if m % 2 == 1 {
        let p = count_class(v, dl, two);
        return Ok(block(&[(dl, p), (add(dl, dd)?, m - p)]));
    }
    let r = residue(v[0], dd);
    if m == 2 {
        return Ok(vec![r, sub(r, dl)?]);
    }
    let p = count_class(v, r, two);
    let hi = add(r, dd)?;
    Ok(if p % 2 == 0 {
        block(&[(r, p - 1), (sub(r, dl)?, 1), (hi, m - p)])
    } else if p <= m - 3 {
        block(&[(r, p), (sub(r, dl)?, 1), (hi, m - p - 1)])
    } else {
        block(&[(r, m - 2), (add(hi, dl)?, 1), (hi, 1)])
    })
}

fn tangle_rep(v: &[i64]) -> Result<Vec<i64>> {
    let m = v.len();
    let dl = delta(v)?;
    let q = v.iter().filter(|&&a| a % 2 == 0).count();
    let one_minus = ck(1i64.checked_sub(dl), "representative")?;
    let neg = ck(dl.checked_neg(), "representative")?;
    Ok(if m % 2 == 1 {
        if q == 0 {
            block(&[(dl, 1), (1, m - 1)])
        } else if q == m {
            block(&[(0, m - 1), (dl, 1)])
        } else if q % 2 == 0 {
            block(&[(0, q - 1), (one_minus, 1), (1, m - q)])
        } else {
            block(&[(0, q), (one_minus, 1), (1, m - q - 1)])
        }
    } else if q == 0 {
        block(&[(ck(dl.checked_add(1), "representative")?, 1), (1, m - 1)])
    } else if q + 1 >= m {
        block(&[(0, m - 1), (neg, 1)])
    } else if q % 2 == 0 {
        block(&[(0, q - 1), (neg, 1), (1, m - q)])
    } else {
        block(&[(0, q), (neg, 1), (1, m - q - 1)])
    })
}

fn virtual_rep(v: &[i64], dd: i64) -> Result<Vec<i64>> {
    let m = v.len();
    if dd == 0 {
        return Ok(v.to_vec());
    }
    let r = residue(v[0], dd);
    let p = count_class(v, r, 2 * dd);
    Ok(block(&[(r, p), (ck(r.checked_add(dd), "representative")?, m - p)]))
}

fn ordered_rep(v: &[i64], r: Relation) -> Result<Vec<i64>> {
    let dd = r.base_gcd(v)?;
    if dd == 0 {
        return Ok(v.to_vec());
    }
    let modulus = ck(dd.checked_mul(2), "representative")?;
    let mut rep: Vec<i64> = v.iter().map(|&a| residue(a, modulus)).collect();
    if !r.is_virtual() {
        let shift = ck(delta(v)?.checked_sub(delta(&rep)?), "representative")?;
        // Correcting the first coordinate would enlarge d when the rest is constant.
        let j = if rep.len() >= 3 && r.gcd_part() != GcdPart::Unit && rep[1..].iter().all(|&a| a == rep[1]) {
            1
        } else {
            0
        };
        let signed = if j % 2 == 0 { shift } else { -shift };
        rep[j] = ck(rep[j].checked_add(signed), "representative")?;
    }
    Ok(rep)
}

fn representative_unchecked(v: &[i64], r: Relation) -> Result<Vec<i64>> {
    if r.is_ordered() {
        return ordered_rep(v, r);
    }
    match r {
        Relation::Braid | Relation::Tangle0 => {
            let dd = r.base_gcd(v)?;
            if dd == 0 {
                Ok(v.to_vec())
            } else {
                classical_gap_rep(v, dd)
            }
        }
        Relation::Tangle => tangle_rep(v),
        Relation::Vtangle => {
            let p = v.iter().filter(|&&a| a % 2 == 0).count();
            Ok(block(&[(0, p), (1, v.len() - p)]))
        }
        Relation::Vbraid | Relation::Vtangle0 => virtual_rep(v, r.base_gcd(v)?),
        _ => unreachable!(),
    }
}

/// The canonical member of the class of `v` under `r`.
pub fn representative(v: &[i64], r: Relation) -> Result<Vec<i64>> {
    check_len(v)?;
    let rep = representative_unchecked(v, r)?;
    if profile(&rep, r)? != profile(v, r)? {
        return Err(Error::Precondition(format!(
            "internal: representative {rep:?} of {v:?} under {r} has a different profile"
        )));
    }
    Ok(rep)
}

/// Parameters of a representative family member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RepresentativeFamily {
    pub relation: Relation,
    pub m: usize,
    /// Lexicographic sort key; its meaning depends on the relation, see
    /// [`family_parameters`].
    pub parameters: Vec<i64>,
}

/// Parameter tuple of a representative.
///
/// * braid, tangle0: `[0, a]` for the constant vector, else `[1, D, r, p, delta]`
///   where D is d or d_2, r the base residue and p the count in r's class mod 2D;
/// * tangle: `[q, delta]` with q the number of even entries;
/// * vbraid, vtangle0: `[0, a]` for constants, else `[1, D, r, p]`;
/// * vtangle: `[p]`, the number of zeros.
pub fn family_parameters(rep: &[i64], r: Relation) -> Result<RepresentativeFamily> {
    if r.is_ordered() {
        return Err(Error::Unsupported(format!("no printed family for ordered relation {r}")));
    }
    let m = rep.len();
    let parameters = match r {
        Relation::Tangle => {
            vec![rep.iter().filter(|&&a| a % 2 == 0).count() as i64, delta(rep)?]
        }
        Relation::Vtangle => vec![rep.iter().filter(|&&a| a == 0).count() as i64],
        _ => {
            let dd = if r.gcd_part() == GcdPart::Full { gcd_diff(rep)? } else { two_part(rep)? };
            if dd == 0 {
                vec![0, rep[0]]
            } else {
                let base = if !r.is_virtual() && m % 2 == 1 { delta(rep)? } else { rep[0] };
                let rr = residue(base, dd);
                let p = count_class(rep, base, 2 * dd) as i64;
                let mut t = vec![1, dd, rr, p];
                if !r.is_virtual() {
                    t.push(delta(rep)?);
                }
                t
            }
        }
    };
    Ok(RepresentativeFamily { relation: r, m, parameters })
}

/// All representatives of `r` in Z^m with coordinates in [-bound, bound],
/// sorted by their parameter tuples.
pub fn enumerate_representatives(
    r: Relation,
    m: usize,
    bound: i64,
) -> Result<impl Iterator<Item = Vec<i64>>> {
    if r.is_ordered() {
        return Err(Error::Unsupported(format!(
            "enumeration is provided only for braid, tangle0, tangle, vbraid, vtangle0, vtangle; got {r}"
        )));
    }
    if m < 2 {
        return Err(Error::TooShort(m));
    }
    if bound < 0 {
        return Err(Error::Precondition("bound must be nonnegative".into()));
    }
    let side = (2 * bound + 1) as u128;
    if side.checked_pow(m as u32).map_or(true, |n| n > 50_000_000) {
        return Err(Error::Resource(format!("box [-{bound},{bound}]^{m} is too large to scan")));
    }
    let mut out = vec![];
    let mut v = vec![-bound; m];
    loop {
        if representative_unchecked(&v, r)? == v {
            out.push((family_parameters(&v, r)?, v.clone()));
        }
        let mut i = m;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out.into_iter().map(|(_, v)| v));
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
        }
    }
}
