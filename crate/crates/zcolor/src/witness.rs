//! Certificates: explicit move words between equivalent vectors.
//!
//! braid, pure, vbraid and vpure certificates are built constructively from
//! normal-form words. The eight tangle-type relations are handled by bounded
//! breadth-first search over their move alphabets.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::action::{all_moves, alphabet, apply_word, MarkedState, Move, MoveKind, MoveWord, Permutation};
use crate::canon::{normal_form_word, representative, triple_reduce};
use crate::decide::{check_len, check_pair, equivalent};
use crate::error::{Error, Result};
use crate::invariants::{delta, gcd_diff, render, residue, ColorVector, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub relation: Relation,
    pub word: MoveWord,
    pub start: Vec<i64>,
    pub end: Vec<i64>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relation {}", self.relation)?;
        writeln!(f, "start {}", render(&self.start))?;
        writeln!(f, "end {}", render(&self.end))?;
        write!(f, "word {}", self.word)
    }
}

impl Certificate {
    /// Parses the four-line text form produced by `Display`.
    pub fn parse(text: &str) -> Result<Certificate> {
        let mut relation = None;
        let mut start = None;
        let mut end = None;
        let mut word = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            match key {
                "relation" => relation = Some(rest.trim().parse()?),
                "start" => start = Some(rest.parse::<ColorVector>()?.into_inner()),
                "end" => end = Some(rest.parse::<ColorVector>()?.into_inner()),
                "word" => word = Some(rest.parse()?),
                _ => return Err(Error::Parse(format!("unexpected certificate line {line:?}"))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("certificate lacks a {k} line"));
        Ok(Certificate {
            relation: relation.ok_or_else(|| missing("relation"))?,
            start: start.ok_or_else(|| missing("start"))?,
            end: end.ok_or_else(|| missing("end"))?,
            word: word.unwrap_or_default(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    Found(Certificate),
    NotEquivalent,
    Exhausted { depth: usize, bound: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub depth: usize,
    pub bound: i64,
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { depth: 16, bound: 32, max_states: 20_000_000 }
    }
}

impl Limits {
    pub fn new(depth: usize, bound: i64) -> Limits {
        Limits { depth, bound, ..Limits::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFailure {
    pub index: Option<usize>,
    pub reason: String,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "move {}: {}", i + 1, self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

/// Replays a certificate from scratch.
pub fn verify(c: &Certificate) -> std::result::Result<(), VerifyFailure> {
    let fail = |index, reason: String| Err(VerifyFailure { index, reason });
    if c.start.len() != c.end.len() {
        return fail(None, format!("length mismatch {} vs {}", c.start.len(), c.end.len()));
    }
    let (kinds, need_identity) = alphabet(c.relation);
    let mut state = MarkedState::new(c.start.clone());
    for (i, &mv) in c.word.moves().iter().enumerate() {
        if !kinds.contains(&mv.kind) {
            return fail(Some(i), format!("alphabet violation: {mv} is not allowed for {}", c.relation));
        }
        if let Err(e) = state.step(mv) {
            return fail(Some(i), e.to_string());
        }
    }
    if state.vector != c.end {
        return fail(
            None,
            format!("replay ends at {} instead of {}", render(&state.vector), render(&c.end)),
        );
    }
    if need_identity && !state.perm.is_identity() {
        return fail(None, format!("net permutation {} is not the identity", state.perm));
    }
    Ok(())
}

/// Stabilizer of a standard-form vector realizing the transposition of
/// positions i and i+1 (1-based); `None` asks for the identity.
pub fn stabilizer_word(v: &[i64], i: Option<usize>) -> Result<MoveWord> {
    check_len(v)?;
    let Some(i) = i else { return Ok(MoveWord::new()) };
    let m = v.len();
    if i == 0 || i >= m {
        return Err(Error::InvalidIndex { index: i, m });
    }
    if v[i - 1] == v[i] {
        return Ok(MoveWord(vec![Move::sigma(i)]));
    }
    let d = gcd_diff(v)?;
    let class = |p: usize| residue(v[p - 1], 2 * d);
    if class(i) != class(i + 1) {
        return Err(Error::Precondition(format!(
            "transposition ({} {}) mixes residue classes mod {} in {v:?}",
            i,
            i + 1,
            2 * d
        )));
    }
    let o = if i + 2 <= m && class(i + 2) != class(i) {
        i
    } else if i >= 2 && class(i - 1) != class(i) {
        i - 1
    } else {
        return Err(Error::Precondition(format!("{v:?} is not in standard form around position {i}")));
    };
    let (_, inner) = triple_reduce(&v[o - 1..o + 2])?;
    let inner = inner.shifted(o - 1);
    let word = inner.concat(&MoveWord(vec![Move::sigma(o + 1)])).concat(&inner.inverse());
    let (w, perm) = apply_word(v, &word)?;
    if w != v || perm != Permutation::transposition(m, i - 1, i) {
        return Err(Error::Precondition(format!("internal: stabilizer failed on {v:?} at {i}")));
    }
    Ok(word)
}

/// A stabilizer of the braid representative `rep` with permutation `target`.
fn stabilizer_for(rep: &[i64], target: &Permutation) -> Result<MoveWord> {
    let m = rep.len();
    // at[p] = strand currently at position p; its destination is target[strand].
    let mut at: Vec<usize> = (0..m).collect();
    let mut cache: HashMap<usize, MoveWord> = HashMap::new();
    let mut word = MoveWord::new();
    for pass in 0..m {
        let mut swapped = false;
        for p in 0..m - 1 - pass.min(m - 1) {
            if target.images()[at[p]] > target.images()[at[p + 1]] {
                let w = match cache.get(&p) {
                    Some(w) => w.clone(),
                    None => {
                        let w = stabilizer_word(rep, Some(p + 1))?;
                        cache.insert(p, w.clone());
                        w
                    }
                };
                word = word.concat(&w);
                at.swap(p, p + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(word)
}

fn braid_word(v: &[i64], w: &[i64]) -> Result<MoveWord> {
    let (rv, bv) = normal_form_word(v)?;
    let (rw, bw) = normal_form_word(w)?;
    if rv != rw {
        return Err(Error::Precondition("internal: representatives differ".into()));
    }
    Ok(bv.concat(&bw.inverse()))
}

/// A word from `v` to `w` with net permutation `net`, through the common
/// braid representative.
fn word_with_perm(v: &[i64], w: &[i64], net: &Permutation) -> Result<MoveWord> {
    let (rv, bv) = normal_form_word(v)?;
    let (rw, bw) = normal_form_word(w)?;
    if rv != rw {
        return Err(Error::Precondition("internal: representatives differ".into()));
    }
    let (_, pv) = apply_word(v, &bv)?;
    let (_, pw) = apply_word(w, &bw)?;
    let s = stabilizer_for(&rv, &pv.inverse().then(net).then(&pw))?;
    Ok(bv.concat(&s).concat(&bw.inverse()))
}

/// sigma_1^{-1} tau_1 sigma_2 tau_2 at offset: (x,y,z) -> (x, y+2(z-x), z), pure.
fn delta_gadget(offset: usize) -> MoveWord {
    MoveWord(vec![Move::sigma_inv(1), Move::tau(1), Move::sigma(2), Move::tau(2)]).shifted(offset)
}

/// A word from `v` to a vector with the same residues mod 2d, strand by
/// strand, and alternating sum `target_delta`.
fn delta_adjust(v: &[i64], target_delta: i64) -> Result<MoveWord> {
    let m = v.len();
    let dv = delta(v)?;
    if dv == target_delta {
        return Ok(MoveWord::new());
    }
    if m == 2 {
        if target_delta != -dv {
            return Err(Error::Precondition("internal: delta mismatch at m = 2".into()));
        }
        return Ok(MoveWord(vec![Move::sigma(1), Move::tau(1)]));
    }
    let d = gcd_diff(v)?;
    let (rep, beta) = normal_form_word(v)?;
    let j = (0..m - 2)
        .find(|&j| (rep[j + 2] - rep[j]).abs() == d)
        .ok_or_else(|| Error::Precondition(format!("internal: no gap-d window in {rep:?}")))?;
    let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
    let step = sign * 2 * (rep[j + 2] - rep[j]);
    let diff = target_delta - dv;
    if diff % step != 0 {
        return Err(Error::Precondition("internal: delta difference not a multiple of 2d".into()));
    }
    let n = diff / step;
    let g = if n > 0 { delta_gadget(j) } else { delta_gadget(j).inverse() };
    let mut word = beta;
    for _ in 0..n.unsigned_abs() {
        word = word.concat(&g);
    }
    Ok(word)
}

fn constructive(v: &[i64], w: &[i64], r: Relation) -> Result<MoveWord> {
    if v == w {
        return Ok(MoveWord::new());
    }
    let id = Permutation::identity(v.len());
    match r {
        Relation::Braid => braid_word(v, w),
        Relation::Pure => word_with_perm(v, w, &id),
        Relation::Vbraid | Relation::Vpure => {
            let pre = delta_adjust(v, delta(w)?)?;
            let (u, p) = apply_word(v, &pre)?;
            let rest = if r == Relation::Vbraid {
                braid_word(&u, w)?
            } else {
                word_with_perm(&u, w, &p.inverse())?
            };
            Ok(pre.concat(&rest))
        }
        _ => unreachable!(),
    }
}

fn is_constructive(r: Relation) -> bool {
    matches!(r, Relation::Braid | Relation::Pure | Relation::Vbraid | Relation::Vpure)
}

/// Searches for, or constructs, a certificate that `v` and `w` are related.
pub fn certify(v: &[i64], w: &[i64], r: Relation, limits: Limits) -> Result<SearchOutcome> {
    check_pair(v, w)?;
    if !equivalent(v, w, r)? {
        return Ok(SearchOutcome::NotEquivalent);
    }
    let word = if is_constructive(r) {
        constructive(v, w, r)?.reduced()
    } else {
        match search(v, r, limits, Some(w))? {
            (Some(word), _) => word,
            (None, _) => return Ok(SearchOutcome::Exhausted { depth: limits.depth, bound: limits.bound }),
        }
    };
    let cert = Certificate { relation: r, word, start: v.to_vec(), end: w.to_vec() };
    if let Err(f) = verify(&cert) {
        return Err(Error::Precondition(format!("internal: certificate failed verification: {f}")));
    }
    Ok(SearchOutcome::Found(cert))
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    vector: Vec<i64>,
    perm: Option<Vec<usize>>,
}

/// Breadth-first search. With a target, stops at the first hit and returns its
/// word; otherwise returns every emitted vector.
fn search(
    v: &[i64],
    r: Relation,
    limits: Limits,
    target: Option<&[i64]>,
) -> Result<(Option<MoveWord>, BTreeSet<Vec<i64>>)> {
    let (kinds, need_identity) = alphabet(r);
    let moves = all_moves(&kinds, v.len());
    let in_box = |u: &[i64]| u.iter().all(|a| a.abs() <= limits.bound);
    let start = MarkedState::new(v.to_vec());
    let key = |s: &MarkedState| Key {
        vector: s.vector.clone(),
        perm: need_identity.then(|| s.perm.images().to_vec()),
    };
    let hit = |s: &MarkedState| {
        target.is_some_and(|t| s.vector == t) && (!need_identity || s.perm.is_identity())
    };
    let mut emitted = BTreeSet::new();
    let mut parents: Vec<(usize, Move)> = vec![];
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    index.insert(key(&start), 0);
    parents.push((usize::MAX, Move::sigma(1)));
    let rebuild = |parents: &Vec<(usize, Move)>, mut i: usize| {
        let mut moves = vec![];
        while i != 0 {
            let (p, mv) = parents[i];
            moves.push(mv);
            i = p;
        }
        moves.reverse();
        MoveWord(moves)
    };
    if hit(&start) {
        return Ok((Some(MoveWord::new()), emitted));
    }
    queue.push_back((start, 0usize, 0usize));
    while let Some((state, id, depth)) = queue.pop_front() {
        if !need_identity || state.perm.is_identity() {
            emitted.insert(state.vector.clone());
        }
        if depth == limits.depth {
            continue;
        }
        for &mv in &moves {
            if gadget_blocked(mv, &state.vector) {
                continue;
            }
            let mut next = state.clone();
            if next.step(mv).is_err() || !in_box(&next.vector) {
                continue;
            }
            let k = key(&next);
            if index.contains_key(&k) {
                continue;
            }
            if index.len() >= limits.max_states {
                return Err(Error::Resource(format!(
                    "search exceeded {} states",
                    limits.max_states
                )));
            }
            let nid = parents.len();
            index.insert(k, nid);
            parents.push((id, mv));
            if hit(&next) {
                return Ok((Some(rebuild(&parents, nid)), emitted));
            }
            queue.push_back((next, nid, depth + 1));
        }
    }
    Ok((None, emitted))
}

fn gadget_blocked(mv: Move, v: &[i64]) -> bool {
    let i = mv.index - 1;
    match mv.kind {
        MoveKind::H | MoveKind::HV => i + 1 < v.len() && v[i] == v[i + 1],
        MoveKind::L2 => i + 1 < v.len() && v[i] != v[i + 1],
        _ => false,
    }
}

/// Vectors reachable from `v` within the limits; for permutation-constrained
/// relations only states with identity permutation are reported.
pub fn orbit(v: &[i64], r: Relation, limits: Limits) -> Result<BTreeSet<Vec<i64>>> {
    check_len(v)?;
    Ok(search(v, r, limits, None)?.1)
}

/// Convenience: the canonical representative together with a certificate
/// reaching it, for the constructive relations.
pub fn certify_to_representative(v: &[i64], r: Relation) -> Result<Certificate> {
    let rep = representative(v, r)?;
    match certify(v, &rep, r, Limits::default())? {
        SearchOutcome::Found(c) => Ok(c),
        other => Err(Error::Precondition(format!("no certificate to representative: {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Relation::*;

    fn found(o: SearchOutcome) -> Certificate {
        match o {
            SearchOutcome::Found(c) => c,
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn braid_and_pure() {
        let c = found(certify(&[1, -5, 4], &[7, 7, 10], Braid, Limits::default()).unwrap());
        assert!(verify(&c).is_ok());
        assert_eq!(
            certify(&[1, -5, 4], &[10, 7, 7], Pure, Limits::default()).unwrap(),
            SearchOutcome::NotEquivalent
        );
        let c = found(certify(&[1, -5, 4], &[7, 7, 10], Pure, Limits::default()).unwrap());
        assert!(verify(&c).is_ok());
    }

    #[test]
    fn empty_word_for_equal_vectors() {
        for r in Relation::ALL {
            let c = found(certify(&[3, 1, 4], &[3, 1, 4], r, Limits::default()).unwrap());
            assert!(c.word.is_empty(), "{r}");
        }
    }

    #[test]
    fn stabilizers() {
        let v = [0, 0, 2, 1, 1, 1];
        assert_eq!(stabilizer_word(&v, Some(2)).unwrap().to_string(), "s3 s2' s3 s2 s3'");
        assert_eq!(stabilizer_word(&v, Some(1)).unwrap().to_string(), "s1");
        assert!(stabilizer_word(&v, None).unwrap().is_empty());
        assert!(stabilizer_word(&v, Some(3)).is_err());
    }

    #[test]
    fn gadget_shifts_middle() {
        let (w, p) = apply_word(&[2, 5, 9], &delta_gadget(0)).unwrap();
        assert_eq!(w, vec![2, 19, 9]);
        assert!(p.is_identity());
    }

    #[test]
    fn tangle_search() {
        let c = found(certify(&[6, 10, 4], &[0, 0, 0], Tangle, Limits::new(12, 32)).unwrap());
        assert!(verify(&c).is_ok());
    }

    #[test]
    fn verify_rejects_tampering() {
        let mut c = found(certify(&[1, -5, 4], &[7, 7, 10], Braid, Limits::default()).unwrap());
        c.end = vec![7, 7, 11];
        assert!(verify(&c).is_err());
        let bad = Certificate {
            relation: Braid,
            word: "t1".parse().unwrap(),
            start: vec![1, 2],
            end: vec![2, 1],
        };
        assert!(verify(&bad).unwrap_err().reason.contains("alphabet violation"));
    }

    #[test]
    fn certificate_text_round_trip() {
        let c = found(certify(&[1, -5, 4], &[-2, 1, 1], Vbraid, Limits::default()).unwrap());
        let back = Certificate::parse(&c.to_string()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn orbits() {
        assert_eq!(orbit(&[0, 0], Braid, Limits::new(5, 5)).unwrap().len(), 1);
        assert!(orbit(&[-2, 0, 3], Braid, Limits::new(6, 16)).unwrap().contains(&vec![5, 8, 4]));
    }
}
