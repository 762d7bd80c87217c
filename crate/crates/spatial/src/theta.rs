//! The theta_4-curve family D_{m,n} and its closed-form `d*`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use zcolor::ColorVector;

use crate::build::DiagramBuilder;
use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// Pairs (d(v_p), d(v_q)). `observed_bound` is set when the set comes from
/// sampling rather than a closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DStarSet {
    pub pairs: BTreeSet<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_bound: Option<u32>,
}

impl fmt::Display for DStarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{{{}}}", items.join(","))?;
        if let Some(b) = self.observed_bound {
            write!(f, " observed at bound {b}")?;
        }
        Ok(())
    }
}

fn check_mn(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::Shape(format!("D_{{m,n}} needs m, n >= 1, got ({m},{n})")));
    }
    Ok(())
}

/// D_{m,n}: arcs b1..b4 leave q, a1..a4 enter p, and four twist regions of
/// 2m, 2n, 2m, 2n crossings are chained through arcs c1..c4.
pub fn theta4_build(m: u32, n: u32) -> Result<Diagram> {
    check_mn(m, n)?;
    let mut b = DiagramBuilder::new();
    let a: Vec<_> = (1..=4).map(|i| b.arc(format!("a{i}"))).collect();
    let bb: Vec<_> = (1..=4).map(|i| b.arc(format!("b{i}"))).collect();
    let c: Vec<_> = (1..=4).map(|i| b.arc(format!("c{i}"))).collect();
    for i in 0..4 {
        let count = 2 * if i % 2 == 0 { m } else { n } as usize;
        let (l, r) = b.twist(c[i], bb[i], count, &format!("r{}.", i + 1));
        b.identify(l, a[i]);
        b.identify(r, c[(i + 1) % 4]);
    }
    b.vertex("p", &a);
    b.vertex("q", &bb);
    let d = b.finish();
    d.validate()?;
    Ok(d)
}

/// Vertex vectors of the coloring of D_{m,n} with c1 = 0, b1 = x, a4 = y.
pub fn theta4_coloring(m: i64, n: i64, x: i64, y: i64) -> Result<(ColorVector, ColorVector)> {
    let ov = || Error::Overflow(format!("theta4_coloring({m},{n},{x},{y})"));
    let mul = |a: i64, b: i64| a.checked_mul(b).ok_or_else(ov);
    let add = |a: i64, b: i64| a.checked_add(b).ok_or_else(ov);
    let two_m = mul(2, m)?;
    let two_n = mul(2, n)?;
    let vp = vec![
        mul(two_m, x)?,
        add(mul(two_m + 1, x)?, mul(two_n, y)?)?,
        add(x, mul(two_n + 1, y)?)?,
        y,
    ];
    let vq = vec![x, add(mul(two_m + 1, x)?, y)?, add(mul(two_m, x)?, mul(two_n + 1, y)?)?, mul(two_n, y)?];
    let cv = |v| ColorVector::new(v).map_err(|e| Error::Shape(e.to_string()));
    Ok((cv(vp)?, cv(vq)?))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..).take_while(|i| i * i <= n).filter(|i| n % i == 0).flat_map(|i| [i, n / i]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// { (a,b) : a | 4mn+1, b | 4mn+1, gcd(a,b) = 1 }.
pub fn theta4_dstar(m: u32, n: u32) -> Result<DStarSet> {
    check_mn(m, n)?;
    let k = 4 * u64::from(m) * u64::from(n) + 1;
    let ds = divisors(k);
    let pairs = ds
        .iter()
        .flat_map(|&a| ds.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a.gcd(&b) == 1)
        .collect();
    Ok(DStarSet { pairs, observed_bound: None })
}

/// { (l a, l b) : (a,b) in s, 0 <= l <= lambda_max } together with (0,0).
pub fn d_from_dstar(s: &DStarSet, lambda_max: u64) -> Result<BTreeSet<(u64, u64)>> {
    let mut out = BTreeSet::from([(0, 0)]);
    for &(a, b) in &s.pairs {
        for l in 1..=lambda_max {
            let pa = a.checked_mul(l).ok_or_else(|| Error::Overflow("d_from_dstar".into()))?;
            let pb = b.checked_mul(l).ok_or_else(|| Error::Overflow("d_from_dstar".into()))?;
            out.insert((pa, pb));
        }
    }
    Ok(out)
}
