use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{Map, Value};
use zcolor::ColorVector;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::lattice::{content, contains, hermite_rows, integer_kernel, Row};
use crate::theta::DStarSet;

/// Colors indexed like `Diagram::arcs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub values: Vec<BigInt>,
}

impl Coloring {
    pub fn constant(d: &Diagram, a: i64) -> Coloring {
        Coloring { values: vec![BigInt::from(a); d.arcs.len()] }
    }

    pub fn from_i64(values: &[i64]) -> Coloring {
        Coloring { values: values.iter().map(|&a| BigInt::from(a)).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn scaled_add(&self, k: &BigInt, other: &Coloring) -> Coloring {
        Coloring { values: self.values.iter().zip(&other.values).map(|(a, b)| a + k * b).collect() }
    }

    /// Colors by arc name: `{"values": {arc: int, ..}}`.
    pub fn to_json(&self, d: &Diagram) -> Result<Value> {
        let mut values = Map::new();
        for (name, v) in d.arcs.iter().zip(&self.values) {
            let n = v.to_i64().ok_or_else(|| Error::Overflow(format!("color of arc {name:?}")))?;
            values.insert(name.clone(), Value::from(n));
        }
        let mut out = Map::new();
        out.insert("values".into(), Value::Object(values));
        Ok(Value::Object(out))
    }

    pub fn from_json(d: &Diagram, text: &str) -> Result<Coloring> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let map = v
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Coloring("expected an object with a \"values\" map".into()))?;
        let mut values = vec![];
        for a in &d.arcs {
            let n = map
                .get(a)
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Coloring(format!("missing or non-integer color for arc {a:?}")))?;
            values.push(BigInt::from(n));
        }
        if map.len() != d.arcs.len() {
            return Err(Error::Coloring("colors given for arcs not in the diagram".into()));
        }
        Ok(Coloring { values })
    }
}

/// Linear conditions on arc colors; each row is one equation `row . c = 0`.
pub fn equations(d: &Diagram) -> Vec<Row> {
    let index = d.index();
    let n = d.arcs.len();
    let mut rows = vec![];
    for c in &d.crossings {
        let mut r = vec![BigInt::zero(); n];
        r[index[c.under_in.as_str()]] += 1;
        r[index[c.under_out.as_str()]] += 1;
        r[index[c.over.as_str()]] -= 2;
        rows.push(r);
    }
    for v in &d.vertices {
        let mut r = vec![BigInt::zero(); n];
        for (j, a) in v.arcs_ccw.iter().enumerate() {
            r[index[a.as_str()]] += if j % 2 == 0 { 1 } else { -1 };
        }
        rows.push(r);
    }
    rows
}

pub fn is_coloring(d: &Diagram, c: &Coloring) -> bool {
    c.values.len() == d.arcs.len()
        && equations(d)
            .iter()
            .all(|r| r.iter().zip(&c.values).map(|(a, b)| a * b).sum::<BigInt>().is_zero())
}

/// A Z-basis of all colorings: the constant coloring 1 first, then the
/// Hermite basis of the colorings vanishing on the first arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringBasis {
    pub rank: usize,
    pub generators: Vec<Coloring>,
    pub contains_trivial: bool,
    hnf: Vec<Row>,
}

impl ColoringBasis {
    pub fn contains(&self, c: &Coloring) -> bool {
        c.values.len() == self.hnf.first().map_or(0, Vec::len) && contains(&self.hnf, &c.values)
    }

    /// Generators other than the constant one.
    pub fn reduced(&self) -> &[Coloring] {
        if self.contains_trivial {
            &self.generators[1..]
        } else {
            &self.generators
        }
    }
}

pub fn coloring_basis(d: &Diagram) -> Result<ColoringBasis> {
    d.validate()?;
    let n = d.arcs.len();
    let kernel = integer_kernel(&equations(d), n);
    let hnf = hermite_rows(&kernel);
    if n == 0 {
        return Ok(ColoringBasis { rank: 0, generators: vec![], contains_trivial: false, hnf });
    }
    let ones: Row = vec![BigInt::one(); n];
    let contains_trivial = contains(&hnf, &ones);
    if !contains_trivial {
        return Err(Error::Shape("internal: constant coloring missing from the kernel".into()));
    }
    let shifted: Vec<Row> =
        kernel.iter().map(|k| k.iter().map(|x| x - &k[0]).collect()).collect();
    let mut generators = vec![Coloring { values: ones }];
    generators.extend(hermite_rows(&shifted).into_iter().map(|values| Coloring { values }));
    Ok(ColoringBasis { rank: generators.len(), generators, contains_trivial, hnf })
}

/// Extends fixed colors through the crossing and vertex conditions. Returns
/// the coloring when every arc is determined and all conditions hold.
pub fn propagate(d: &Diagram, fixed: &[(&str, i64)]) -> Result<Option<Coloring>> {
    let index = d.index();
    let rows = equations(d);
    let mut known: Vec<Option<BigInt>> = vec![None; d.arcs.len()];
    for &(a, v) in fixed {
        let i = *index
            .get(a)
            .ok_or_else(|| Error::Coloring(format!("unknown arc {a:?}")))?;
        known[i] = Some(BigInt::from(v));
    }
    loop {
        let mut progress = false;
        for r in &rows {
            let unknown: Vec<usize> =
                (0..r.len()).filter(|&i| !r[i].is_zero() && known[i].is_none()).collect();
            if unknown.len() != 1 {
                continue;
            }
            let u = unknown[0];
            let rest: BigInt = (0..r.len())
                .filter(|&i| i != u && !r[i].is_zero())
                .map(|i| &r[i] * known[i].as_ref().unwrap())
                .sum();
            let (q, rem) = (-rest).div_rem(&r[u]);
            if !rem.is_zero() {
                return Ok(None);
            }
            known[u] = Some(q);
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let Some(values) = known.into_iter().collect::<Option<Vec<_>>>() else { return Ok(None) };
    let c = Coloring { values };
    Ok(is_coloring(d, &c).then_some(c))
}

/// The unique coloring taking the given values on the given arcs, when the
/// values determine one. `Ok(None)` if no integer coloring matches or the
/// values leave freedom.
pub fn solve_fixed(d: &Diagram, fixed: &[(&str, i64)]) -> Result<Option<Coloring>> {
    let basis = coloring_basis(d)?;
    let index = d.index();
    let k = basis.rank;
    let mut rows: Vec<Vec<BigRational>> = vec![];
    for &(a, v) in fixed {
        let i = *index.get(a).ok_or_else(|| Error::Coloring(format!("unknown arc {a:?}")))?;
        let mut r: Vec<BigRational> =
            basis.generators.iter().map(|g| BigRational::from_integer(g.values[i].clone())).collect();
        r.push(BigRational::from_integer(BigInt::from(v)));
        rows.push(r);
    }
    let mut piv = 0;
    for c in 0..k {
        let Some(p) = (piv..rows.len()).find(|&r| !rows[r][c].is_zero()) else { return Ok(None) };
        rows.swap(piv, p);
        let lead = rows[piv][c].clone();
        for x in rows[piv].iter_mut() {
            *x /= &lead;
        }
        for r in 0..rows.len() {
            if r != piv && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for j in 0..=k {
                    let t = &f * &rows[piv][j];
                    rows[r][j] -= t;
                }
            }
        }
        piv += 1;
    }
    if rows[k..].iter().any(|r| !r[k].is_zero()) {
        return Ok(None);
    }
    let mut c = Coloring { values: vec![BigInt::zero(); d.arcs.len()] };
    for (row, g) in rows.iter().zip(&basis.generators) {
        if !row[k].is_integer() {
            return Ok(None);
        }
        c = c.scaled_add(&row[k].to_integer(), g);
    }
    Ok(Some(c))
}

fn check(d: &Diagram, c: &Coloring) -> Result<()> {
    if !is_coloring(d, c) {
        return Err(Error::Coloring("the values violate a crossing or vertex condition".into()));
    }
    Ok(())
}

pub fn vertex_values(d: &Diagram, c: &Coloring, vertex: &str) -> Result<Vec<BigInt>> {
    let v = d.vertex(vertex)?;
    if c.values.len() != d.arcs.len() {
        return Err(Error::Coloring(format!("{} values for {} arcs", c.values.len(), d.arcs.len())));
    }
    let index = d.index();
    Ok(v.arcs_ccw.iter().map(|a| c.values[index[a.as_str()]].clone()).collect())
}

/// The colors around `vertex` in cyclic order, starting at its first listed arc.
pub fn vertex_vector(d: &Diagram, c: &Coloring, vertex: &str) -> Result<ColorVector> {
    check(d, c)?;
    let vals = vertex_values(d, c, vertex)?;
    let ints = vals
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(format!("color at vertex {vertex:?}"))))
        .collect::<Result<Vec<_>>>()?;
    ColorVector::new(ints).map_err(|e| Error::Shape(e.to_string()))
}

pub fn difference_gcd(vals: &[BigInt]) -> BigInt {
    match vals.first() {
        None => BigInt::zero(),
        Some(x0) => vals.iter().fold(BigInt::zero(), |g, x| g.gcd(&(x - x0))),
    }
}

/// Nontrivial with difference gcd 1 over all arcs.
pub fn is_essential(d: &Diagram, c: &Coloring) -> bool {
    is_coloring(d, c) && difference_gcd(&c.values).is_one()
}

/// The essential coloring `(c - c(arc_0)) / g`, or `None` for trivial `c`.
pub fn essential_part(c: &Coloring) -> Option<Coloring> {
    let base = c.values.first()?;
    let shifted: Row = c.values.iter().map(|x| x - base).collect();
    let g = content(&shifted);
    if g.is_zero() {
        return None;
    }
    Some(Coloring { values: shifted.iter().map(|x| x / &g).collect() })
}

/// Vertex gcd tuples of the essential colorings sum k_i g_i with every
/// k_i in [-bound, bound], over the non-constant basis generators.
/// This is a subset of the tuples realized by all essential colorings.
pub fn observed_d_tuples(d: &Diagram, bound: u32) -> Result<BTreeSet<Vec<BigInt>>> {
    let basis = coloring_basis(d)?;
    let gens = basis.reduced();
    let side = 2 * u64::from(bound) + 1;
    let total = side.checked_pow(gens.len() as u32).filter(|&t| t <= 50_000_000);
    if total.is_none() {
        return Err(Error::Resource(format!(
            "{} generators at bound {bound} exceed the sampling budget",
            gens.len()
        )));
    }
    let mut out = BTreeSet::new();
    let b = i64::from(bound);
    let mut k = vec![-b; gens.len()];
    let zero = Coloring { values: vec![BigInt::zero(); d.arcs.len()] };
    loop {
        if k.iter().any(|&x| x != 0) {
            let mut c = zero.clone();
            for (ki, g) in k.iter().zip(gens) {
                c = c.scaled_add(&BigInt::from(*ki), g);
            }
            if let Some(e) = essential_part(&c) {
                let mut t = vec![];
                for v in &d.vertices {
                    t.push(difference_gcd(&vertex_values(d, &e, &v.id)?));
                }
                out.insert(t);
            }
        }
        let mut i = 0;
        loop {
            if i == k.len() {
                return Ok(out);
            }
            if k[i] < b {
                k[i] += 1;
                break;
            }
            k[i] = -b;
            i += 1;
        }
    }
}

/// Observed `d*` of a two-vertex diagram, labeled by its sampling bound.
pub fn observed_d_star(d: &Diagram, bound: u32) -> Result<DStarSet> {
    if d.vertices.len() != 2 {
        return Err(Error::Shape(format!(
            "pair mode needs exactly two vertices, found {}",
            d.vertices.len()
        )));
    }
    let mut pairs = BTreeSet::new();
    for t in observed_d_tuples(d, bound)? {
        let conv = |x: &BigInt| x.to_u64().ok_or_else(|| Error::Overflow("vertex gcd".into()));
        pairs.insert((conv(&t[0])?, conv(&t[1])?));
    }
    Ok(DStarSet { pairs, observed_bound: Some(bound) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn planar() -> Diagram {
        parse_diagram(
            r#"{"arcs":["e1","e2","e3","e4"],"crossings":[],
            "vertices":[{"id":"p","arcs_ccw":["e1","e2","e3","e4"]},{"id":"q","arcs_ccw":["e4","e3","e2","e1"]}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn planar_rank_and_dstar() {
        let d = planar();
        let b = coloring_basis(&d).unwrap();
        assert_eq!(b.rank, 3);
        assert!(b.contains_trivial);
        for g in &b.generators {
            assert!(is_coloring(&d, g));
        }
        let s = observed_d_star(&d, 2).unwrap();
        assert_eq!(s.pairs.into_iter().collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn propagation() {
        let d = planar();
        let c = propagate(&d, &[("e1", 0), ("e2", 1), ("e3", 2)]).unwrap().unwrap();
        assert_eq!(c, Coloring::from_i64(&[0, 1, 2, 1]));
        assert_eq!(propagate(&d, &[("e1", 0)]).unwrap(), None);
        assert_eq!(solve_fixed(&d, &[("e1", 0), ("e2", 1), ("e3", 2)]).unwrap(), Some(c));
        assert_eq!(solve_fixed(&d, &[("e1", 0), ("e2", 1)]).unwrap(), None);
    }

    #[test]
    fn unknot_has_only_trivial_colorings() {
        let d = parse_diagram(r#"{"arcs":["o"],"crossings":[],"vertices":[]}"#).unwrap();
        let b = coloring_basis(&d).unwrap();
        assert_eq!(b.rank, 1);
        assert!(observed_d_tuples(&d, 3).unwrap().is_empty());
    }

    #[test]
    fn essentiality() {
        let d = planar();
        assert!(!is_essential(&d, &Coloring::constant(&d, 4)));
        let c = Coloring::from_i64(&[0, 1, 2, 1]);
        assert!(is_essential(&d, &c));
        let scaled = Coloring::from_i64(&[5, 8, 11, 8]);
        assert!(!is_essential(&d, &scaled));
        assert_eq!(essential_part(&scaled), Some(c.clone()));
        assert_eq!(vertex_vector(&d, &c, "q").unwrap().entries(), &[1, 2, 1, 0]);
        assert!(vertex_vector(&d, &c, "r").is_err());
        assert!(vertex_vector(&d, &Coloring::from_i64(&[0, 1, 0, 0]), "p").is_err());
    }

    #[test]
    fn coloring_json_round_trip() {
        let d = planar();
        let c = Coloring::from_i64(&[0, 1, 2, 1]);
        let text = c.to_json(&d).unwrap().to_string();
        assert_eq!(text, r#"{"values":{"e1":0,"e2":1,"e3":2,"e4":1}}"#);
        assert_eq!(Coloring::from_json(&d, &text).unwrap(), c);
    }
}
