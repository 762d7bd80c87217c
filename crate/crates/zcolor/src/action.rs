//! Moves acting on strand colors.
//!
//! Every move acts on one or two adjacent positions and tracks where strands
//! go. Positions are 1-based in the public syntax.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{ck, Error, Result};
use crate::invariants::{two_part_of, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MoveKind {
    /// Classical crossing σ_i (Plus) or σ_i^{-1} (Minus).
    Sigma,
    /// Virtual crossing.
    Tau,
    /// Pair shift by the two-part of the difference, strands swapped.
    H,
    /// Opposite shifts by the two-part of the difference, strands swapped.
    HV,
    /// Equal pair shifted by 2 (a loop passes over both strands).
    L2,
    /// Pair shifted by 2, entries need not agree.
    P2,
    /// Single entry shifted by 2.
    V1,
}

impl MoveKind {
    /// Whether the move exchanges the strands at i and i+1.
    pub fn swaps(self) -> bool {
        matches!(self, MoveKind::Sigma | MoveKind::Tau | MoveKind::H | MoveKind::HV)
    }

    fn letter(self) -> char {
        match self {
            MoveKind::Sigma => 's',
            MoveKind::Tau => 't',
            MoveKind::H => 'H',
            MoveKind::HV => 'W',
            MoveKind::L2 => 'L',
            MoveKind::P2 => 'P',
            MoveKind::V1 => 'V',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Move {
    pub kind: MoveKind,
    pub index: usize,
    pub sign: Sign,
}

impl Move {
    pub fn new(kind: MoveKind, index: usize, sign: Sign) -> Move {
        let sign = if kind == MoveKind::Tau { Sign::Plus } else { sign };
        Move { kind, index, sign }
    }

    pub fn sigma(i: usize) -> Move {
        Move::new(MoveKind::Sigma, i, Sign::Plus)
    }

    pub fn sigma_inv(i: usize) -> Move {
        Move::new(MoveKind::Sigma, i, Sign::Minus)
    }

    pub fn tau(i: usize) -> Move {
        Move::new(MoveKind::Tau, i, Sign::Plus)
    }

    pub fn inverse(self) -> Move {
        match self.kind {
            MoveKind::Tau => self,
            _ => Move { sign: self.sign.flip(), ..self },
        }
    }

    /// The same move `by` positions further right.
    pub fn shifted(self, by: usize) -> Move {
        Move { index: self.index + by, ..self }
    }

    fn check_index(self, m: usize) -> Result<()> {
        let max = if self.kind == MoveKind::V1 { m } else { m.saturating_sub(1) };
        if self.index == 0 || self.index > max {
            return Err(Error::InvalidIndex { index: self.index, m });
        }
        Ok(())
    }

    /// Applies the move to a vector in place.
    pub fn act(self, v: &mut [i64]) -> Result<()> {
        self.check_index(v.len())?;
        let i = self.index - 1;
        if self.kind == MoveKind::V1 {
            v[i] = ck(v[i].checked_add(2 * self.sign.factor()), "V1")?;
            return Ok(());
        }
        let (a, b) = (v[i], v[i + 1]);
        let (na, nb) = match self.kind {
            MoveKind::Sigma => match self.sign {
                Sign::Plus => (b, ck(b.checked_mul(2).and_then(|x| x.checked_sub(a)), "sigma")?),
                Sign::Minus => (ck(a.checked_mul(2).and_then(|x| x.checked_sub(b)), "sigma")?, a),
            },
            MoveKind::Tau => (b, a),
            MoveKind::H | MoveKind::HV => {
                if a == b {
                    return Err(Error::Precondition(format!(
                        "{} needs distinct entries at positions {} and {}",
                        self,
                        self.index,
                        self.index + 1
                    )));
                }
                let diff = ck(b.checked_sub(a), "gadget")?;
                let s = two_part_of(diff) * self.sign.factor();
                if self.kind == MoveKind::H {
                    (ck(a.checked_add(s), "H")?, ck(b.checked_add(s), "H")?)
                } else {
                    (ck(a.checked_sub(s), "HV")?, ck(b.checked_add(s), "HV")?)
                }
            }
            MoveKind::L2 | MoveKind::P2 => {
                if self.kind == MoveKind::L2 && a != b {
                    return Err(Error::Precondition(format!(
                        "{} needs equal entries at positions {} and {}",
                        self,
                        self.index,
                        self.index + 1
                    )));
                }
                let s = 2 * self.sign.factor();
                (ck(a.checked_add(s), "pair shift")?, ck(b.checked_add(s), "pair shift")?)
            }
            MoveKind::V1 => unreachable!(),
        };
        v[i] = na;
        v[i + 1] = nb;
        Ok(())
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)?;
        match (self.kind, self.sign) {
            (MoveKind::Tau, _) => Ok(()),
            (MoveKind::Sigma, Sign::Plus) => Ok(()),
            (MoveKind::Sigma, Sign::Minus) => f.write_str("'"),
            (_, Sign::Plus) => f.write_str("+"),
            (_, Sign::Minus) => f.write_str("-"),
        }
    }
}

impl FromStr for Move {
    type Err = Error;
    fn from_str(tok: &str) -> Result<Move> {
        let bad = || Error::Parse(format!("bad move token {tok:?}"));
        let mut chars = tok.chars();
        let kind = match chars.next().ok_or_else(bad)? {
            's' => MoveKind::Sigma,
            't' => MoveKind::Tau,
            'H' => MoveKind::H,
            'W' => MoveKind::HV,
            'L' => MoveKind::L2,
            'P' => MoveKind::P2,
            'V' => MoveKind::V1,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let (digits, suffix) = rest.split_at(digits_end);
        if digits.is_empty() || digits.starts_with('0') {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        let sign = match (kind, suffix) {
            (MoveKind::Tau, "") | (MoveKind::Sigma, "") => Sign::Plus,
            (MoveKind::Sigma, "'") => Sign::Minus,
            (MoveKind::Sigma | MoveKind::Tau, _) => return Err(bad()),
            (_, "+") => Sign::Plus,
            (_, "-") => Sign::Minus,
            _ => return Err(bad()),
        };
        Ok(Move::new(kind, index, sign))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MoveWord(pub Vec<Move>);

impl MoveWord {
    pub fn new() -> MoveWord {
        MoveWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn inverse(&self) -> MoveWord {
        MoveWord(self.0.iter().rev().map(|m| m.inverse()).collect())
    }

    pub fn concat(&self, other: &MoveWord) -> MoveWord {
        let mut moves = self.0.clone();
        moves.extend_from_slice(&other.0);
        MoveWord(moves)
    }

    pub fn shifted(&self, by: usize) -> MoveWord {
        MoveWord(self.0.iter().map(|m| m.shifted(by)).collect())
    }

    /// Cancels adjacent pairs `m m^-1`. The result acts the same on every
    /// state the original word accepts.
    pub fn reduced(&self) -> MoveWord {
        let mut out: Vec<Move> = Vec::with_capacity(self.0.len());
        for &m in &self.0 {
            if out.last() == Some(&m.inverse()) {
                out.pop();
            } else {
                out.push(m);
            }
        }
        MoveWord(out)
    }

    pub fn kinds(&self) -> impl Iterator<Item = MoveKind> + '_ {
        self.0.iter().map(|m| m.kind)
    }
}

impl fmt::Display for MoveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        f.write_str(&toks.join(" "))
    }
}

impl FromStr for MoveWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<MoveWord> {
        s.split_whitespace().map(Move::from_str).collect::<Result<Vec<_>>>().map(MoveWord)
    }
}

/// `images[i]` is the current position of the strand that started at i (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Permutation {
        Permutation((0..m).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let mut seen = vec![false; images.len()];
        for &j in &images {
            if j >= images.len() || seen[j] {
                return Err(Error::Precondition(format!("not a permutation: {images:?}")));
            }
            seen[j] = true;
        }
        Ok(Permutation(images))
    }

    /// Transposition of positions i and j (0-based).
    pub fn transposition(m: usize, i: usize, j: usize) -> Permutation {
        let mut p = Permutation::identity(m);
        p.0.swap(i, j);
        p
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Exchange whatever strands sit at positions p and p+1 (0-based).
    pub fn swap_positions(&mut self, p: usize) {
        for j in self.0.iter_mut() {
            if *j == p {
                *j = p + 1;
            } else if *j == p + 1 {
                *j = p;
            }
        }
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&j| other.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// Cycle notation on 1-based points, `()` for the identity.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i];
            }
            out.push('(');
            out.push_str(&cyc.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycles())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedState {
    pub vector: Vec<i64>,
    pub perm: Permutation,
}

impl MarkedState {
    pub fn new(vector: Vec<i64>) -> MarkedState {
        let perm = Permutation::identity(vector.len());
        MarkedState { vector, perm }
    }

    pub fn step(&mut self, mv: Move) -> Result<()> {
        mv.act(&mut self.vector)?;
        if mv.kind.swaps() {
            self.perm.swap_positions(mv.index - 1);
        }
        Ok(())
    }
}

pub fn apply_move(s: &MarkedState, mv: Move) -> Result<MarkedState> {
    let mut next = s.clone();
    next.step(mv)?;
    Ok(next)
}

pub fn apply_word(v: &[i64], w: &MoveWord) -> Result<(Vec<i64>, Permutation)> {
    let mut s = MarkedState::new(v.to_vec());
    for &mv in w.moves() {
        s.step(mv)?;
    }
    Ok((s.vector, s.perm))
}

/// Move kinds generating a relation, and whether the net permutation must be
/// the identity.
pub fn alphabet(r: Relation) -> (Vec<MoveKind>, bool) {
    use MoveKind::*;
    let kinds = match r.unordered() {
        Relation::Braid => vec![Sigma],
        Relation::Tangle0 => vec![Sigma, H],
        Relation::Tangle => vec![Sigma, H, L2, P2],
        Relation::Vbraid => vec![Sigma, Tau],
        Relation::Vtangle0 => vec![Sigma, Tau, H, HV],
        Relation::Vtangle => vec![Sigma, Tau, H, HV, V1],
        _ => unreachable!(),
    };
    (kinds, r.is_ordered())
}

/// Every concrete move of the given kinds at length m, in a fixed order.
pub fn all_moves(kinds: &[MoveKind], m: usize) -> Vec<Move> {
    let mut out = vec![];
    for &k in kinds {
        let top = if k == MoveKind::V1 { m } else { m - 1 };
        for i in 1..=top {
            out.push(Move::new(k, i, Sign::Plus));
            if k != MoveKind::Tau {
                out.push(Move::new(k, i, Sign::Minus));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> MoveWord {
        s.parse().unwrap()
    }

    #[test]
    fn hurwitz_examples() {
        let (v, _) = apply_word(&[1, -5, 4], &word("s1' s2 s2")).unwrap();
        assert_eq!(v, vec![7, 7, 10]);
        let (v, _) = apply_word(&[1, -5, 4], &word("t1 s2' s1 t2")).unwrap();
        assert_eq!(v, vec![-2, 1, 1]);
        let (v, _) = apply_word(&[1, -5, 4], &word("t1 s2 s1' t2")).unwrap();
        assert_eq!(v, vec![-14, 7, -5]);
        let (v, p) = apply_word(&[0, 0, 2, 1, 1, 1], &word("s3 s2' s3 s2 s3'")).unwrap();
        assert_eq!(v, vec![0, 0, 2, 1, 1, 1]);
        assert_eq!(p, Permutation::transposition(6, 1, 2));
    }

    #[test]
    fn reduction() {
        assert_eq!(word("s1 s2 s2' s1' t1").reduced(), word("t1"));
        assert_eq!(word("t1 t1 H1+ H1- s2").reduced(), word("s2"));
        assert_eq!(word("s1 s1").reduced(), word("s1 s1"));
    }

    #[test]
    fn gadgets() {
        let mut v = vec![0, 12];
        Move::new(MoveKind::H, 1, Sign::Plus).act(&mut v).unwrap();
        assert_eq!(v, vec![4, 16]);
        let mut v = vec![5, 2];
        Move::new(MoveKind::HV, 1, Sign::Plus).act(&mut v).unwrap();
        assert_eq!(v, vec![4, 3]);
        assert!(Move::new(MoveKind::H, 1, Sign::Plus).act(&mut [3, 3]).is_err());
        assert!(Move::new(MoveKind::L2, 1, Sign::Plus).act(&mut [3, 4]).is_err());
        let mut v = vec![3, 4];
        Move::new(MoveKind::V1, 2, Sign::Minus).act(&mut v).unwrap();
        assert_eq!(v, vec![3, 2]);
    }

    #[test]
    fn index_checks() {
        assert!(matches!(
            Move::sigma(3).act(&mut [1, 2, 3]),
            Err(Error::InvalidIndex { index: 3, m: 3 })
        ));
        assert!(Move::new(MoveKind::V1, 3, Sign::Plus).act(&mut [1, 2, 3]).is_ok());
    }

    #[test]
    fn tokens_round_trip() {
        let text = "s1 s2' t3 H1+ H2- W1+ W1- L2+ L1- P3+ P1- V4+ V1-";
        assert_eq!(word(text).to_string(), text);
        for bad in ["s0", "x1", "s1+", "H1", "t1'", "s", "W2*", "s01"] {
            assert!(bad.parse::<Move>().is_err(), "{bad}");
        }
    }

    #[test]
    fn inverses_undo() {
        let v = vec![3, -7, 12, 5];
        for mv in all_moves(&[MoveKind::Sigma, MoveKind::Tau, MoveKind::H, MoveKind::HV, MoveKind::P2, MoveKind::V1], 4) {
            let mut u = v.clone();
            mv.act(&mut u).unwrap();
            mv.inverse().act(&mut u).unwrap();
            assert_eq!(u, v, "{mv}");
        }
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(Permutation::identity(3).cycles(), "()");
        assert_eq!(Permutation::transposition(4, 1, 2).cycles(), "(2 3)");
    }
}
