use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{ck, Error, Result};

/// An element of Z^m with m >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ColorVector(Vec<i64>);

impl ColorVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::TooShort(entries.len()));
        }
        Ok(ColorVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl std::ops::Deref for ColorVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for ColorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.0))
    }
}

impl FromStr for ColorVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad vector entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ColorVector::new(entries)
    }
}

/// Comma separated rendering, e.g. `1,-5,4`.
pub fn render(v: &[i64]) -> String {
    v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

/// Alternating sum a_1 - a_2 + a_3 - ...
pub fn delta(v: &[i64]) -> Result<i64> {
    let mut acc: i64 = 0;
    for (i, &a) in v.iter().enumerate() {
        acc = if i % 2 == 0 {
            ck(acc.checked_add(a), "delta")?
        } else {
            ck(acc.checked_sub(a), "delta")?
        };
    }
    Ok(acc)
}

/// gcd of all a_i - a_1; zero exactly for constant vectors.
pub fn gcd_diff(v: &[i64]) -> Result<i64> {
    let Some(&first) = v.first() else { return Ok(0) };
    let mut g: i64 = 0;
    for &a in &v[1..] {
        let diff = ck(a.checked_sub(first), "gcd_diff")?;
        let diff = ck(diff.checked_abs(), "gcd_diff")?;
        g = g.gcd(&diff);
    }
    Ok(g)
}

/// Largest power of two dividing `n`, or 0 for n = 0.
pub fn two_part_of(n: i64) -> i64 {
    if n == 0 {
        0
    } else {
        let n = n.unsigned_abs();
        (n & n.wrapping_neg()) as i64
    }
}

/// Two-part of the difference gcd.
pub fn two_part(v: &[i64]) -> Result<i64> {
    Ok(two_part_of(gcd_diff(v)?))
}

/// Residue of `a` in [0, n), or `a` itself when n = 0.
pub fn residue(a: i64, n: i64) -> i64 {
    if n == 0 {
        a
    } else {
        a.rem_euclid(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueMultiset {
    pub modulus: i64,
    pub counts: BTreeMap<i64, usize>,
}

impl ResidueMultiset {
    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Residues in increasing order, with repetition.
    pub fn sorted(&self) -> Vec<i64> {
        self.counts
            .iter()
            .flat_map(|(&r, &c)| std::iter::repeat(r).take(c))
            .collect()
    }
}

impl fmt::Display for ResidueMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}_{}", render(&self.sorted()), self.modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueVector {
    pub modulus: i64,
    pub residues: Vec<i64>,
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})_{}", render(&self.residues), self.modulus)
    }
}

pub fn residues_multiset(v: &[i64], n: i64) -> ResidueMultiset {
    let mut counts = BTreeMap::new();
    for &a in v {
        *counts.entry(residue(a, n)).or_insert(0) += 1;
    }
    ResidueMultiset { modulus: n, counts }
}

pub fn residues_ordered(v: &[i64], n: i64) -> ResidueVector {
    ResidueVector {
        modulus: n,
        residues: v.iter().map(|&a| residue(a, n)).collect(),
    }
}

/// Which gcd-like quantity a relation remembers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GcdPart {
    /// d(v)
    Full,
    /// d_2(v)
    Two,
    /// only parity survives
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Braid,
    Tangle0,
    Tangle,
    Pure,
    Slink0,
    Slink,
    Vbraid,
    Vtangle0,
    Vtangle,
    Vpure,
    Vslink0,
    Vslink,
}

impl Relation {
    pub const ALL: [Relation; 12] = [
        Relation::Braid,
        Relation::Tangle0,
        Relation::Tangle,
        Relation::Pure,
        Relation::Slink0,
        Relation::Slink,
        Relation::Vbraid,
        Relation::Vtangle0,
        Relation::Vtangle,
        Relation::Vpure,
        Relation::Vslink0,
        Relation::Vslink,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Braid => "braid",
            Relation::Tangle0 => "tangle0",
            Relation::Tangle => "tangle",
            Relation::Pure => "pure",
            Relation::Slink0 => "slink0",
            Relation::Slink => "slink",
            Relation::Vbraid => "vbraid",
            Relation::Vtangle0 => "vtangle0",
            Relation::Vtangle => "vtangle",
            Relation::Vpure => "vpure",
            Relation::Vslink0 => "vslink0",
            Relation::Vslink => "vslink",
        }
    }

    pub fn is_virtual(self) -> bool {
        matches!(
            self,
            Relation::Vbraid
                | Relation::Vtangle0
                | Relation::Vtangle
                | Relation::Vpure
                | Relation::Vslink0
                | Relation::Vslink
        )
    }

    /// Permutation-constrained relations compare ordered residues.
    pub fn is_ordered(self) -> bool {
        matches!(
            self,
            Relation::Pure
                | Relation::Slink0
                | Relation::Slink
                | Relation::Vpure
                | Relation::Vslink0
                | Relation::Vslink
        )
    }

    pub fn gcd_part(self) -> GcdPart {
        match self {
            Relation::Braid | Relation::Pure | Relation::Vbraid | Relation::Vpure => GcdPart::Full,
            Relation::Tangle0 | Relation::Slink0 | Relation::Vtangle0 | Relation::Vslink0 => {
                GcdPart::Two
            }
            _ => GcdPart::Unit,
        }
    }

    /// The same column without the permutation constraint.
    pub fn unordered(self) -> Relation {
        match self {
            Relation::Pure => Relation::Braid,
            Relation::Slink0 => Relation::Tangle0,
            Relation::Slink => Relation::Tangle,
            Relation::Vpure => Relation::Vbraid,
            Relation::Vslink0 => Relation::Vtangle0,
            Relation::Vslink => Relation::Vtangle,
            r => r,
        }
    }

    /// The virtual counterpart (identity on virtual relations).
    pub fn virtualized(self) -> Relation {
        match self {
            Relation::Braid => Relation::Vbraid,
            Relation::Tangle0 => Relation::Vtangle0,
            Relation::Tangle => Relation::Vtangle,
            Relation::Pure => Relation::Vpure,
            Relation::Slink0 => Relation::Vslink0,
            Relation::Slink => Relation::Vslink,
            r => r,
        }
    }

    /// The classical counterpart (identity on classical relations).
    pub fn classical(self) -> Relation {
        match self {
            Relation::Vbraid => Relation::Braid,
            Relation::Vtangle0 => Relation::Tangle0,
            Relation::Vtangle => Relation::Tangle,
            Relation::Vpure => Relation::Pure,
            Relation::Vslink0 => Relation::Slink0,
            Relation::Vslink => Relation::Slink,
            r => r,
        }
    }

    /// Edges (finer, coarser) of the implication lattice.
    pub fn implications() -> Vec<(Relation, Relation)> {
        use Relation::*;
        let column = [
            (Pure, Braid),
            (Pure, Slink0),
            (Braid, Tangle0),
            (Slink0, Slink),
            (Tangle0, Tangle),
            (Slink0, Tangle0),
            (Slink, Tangle),
        ];
        let mut edges: Vec<_> = column.to_vec();
        edges.extend(column.iter().map(|&(a, b)| (a.virtualized(), b.virtualized())));
        edges.extend(
            [Braid, Tangle0, Tangle, Pure, Slink0, Slink]
                .iter()
                .map(|&r| (r, r.virtualized())),
        );
        edges
    }

    /// The quantity D with modulus 2D appearing in this relation's profile.
    pub fn base_gcd(self, v: &[i64]) -> Result<i64> {
        Ok(match self.gcd_part() {
            GcdPart::Full => gcd_diff(v)?,
            GcdPart::Two => two_part(v)?,
            GcdPart::Unit => 1,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Relation::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown relation {s:?}")))
    }
}

/// The comparable tuple characterizing a relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantProfile {
    pub relation: Relation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gcd_part: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiset: Option<ResidueMultiset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordered: Option<ResidueVector>,
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.relation)?;
        if let Some(d) = self.delta {
            write!(f, " delta={d}")?;
        }
        if let Some(g) = self.gcd_part {
            let label = if self.relation.gcd_part() == GcdPart::Two { "d2" } else { "d" };
            write!(f, " {label}={g}")?;
        }
        if let Some(m) = &self.multiset {
            write!(f, " M={m}")?;
        }
        if let Some(o) = &self.ordered {
            write!(f, " M->={o}")?;
        }
        Ok(())
    }
}

pub fn profile(v: &[i64], r: Relation) -> Result<InvariantProfile> {
    let base = r.base_gcd(v)?;
    let modulus = ck(base.checked_mul(2), "profile")?;
    Ok(InvariantProfile {
        relation: r,
        delta: if r.is_virtual() { None } else { Some(delta(v)?) },
        gcd_part: if r.gcd_part() == GcdPart::Unit { None } else { Some(base) },
        multiset: (!r.is_ordered()).then(|| residues_multiset(v, modulus)),
        ordered: r.is_ordered().then(|| residues_ordered(v, modulus)),
    })
}

/// Profile of a strand state: for ordered relations the residue of the strand
/// that started at position i is read at its current position `perm[i]`.
/// With the identity permutation this is `profile`.
pub fn transported_profile(v: &[i64], perm: &[usize], r: Relation) -> Result<InvariantProfile> {
    let mut p = profile(v, r)?;
    if let Some(o) = p.ordered.as_mut() {
        o.residues = perm.iter().map(|&j| residue(v[j], o.modulus)).collect();
    }
    Ok(p)
}
