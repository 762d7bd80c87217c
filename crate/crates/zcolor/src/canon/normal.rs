//! Braid words carrying a vector to its braid representative.
//!
//! Odd length: reduce consecutive triples so the vector becomes a single entry
//! followed by equal pairs, run a Euclid-style reduction on the pair offsets
//! using reflection gadgets, then sort the pairs. Even length: gather two
//! strands of a chosen class at the end, normalize the odd prefix, slide the
//! odd entry into place, optionally flip classes, and finally shift by
//! multiples of 2d until the base residue is reached.

use crate::action::{Move, MoveWord};
use crate::decide::check_len;
use crate::error::{Error, Result};
use crate::invariants::{delta, gcd_diff, residue, Relation};

const MAX_WORD: usize = 20_000_000;

struct Builder {
    v: Vec<i64>,
    word: Vec<Move>,
}

impl Builder {
    fn new(v: &[i64]) -> Builder {
        Builder { v: v.to_vec(), word: vec![] }
    }

    fn push(&mut self, mv: Move) -> Result<()> {
        mv.act(&mut self.v)?;
        self.word.push(mv);
        if self.word.len() > MAX_WORD {
            return Err(Error::Resource(format!("normal form word exceeds {MAX_WORD} moves")));
        }
        Ok(())
    }

    fn s(&mut self, i: usize) -> Result<()> {
        self.push(Move::sigma(i))
    }

    fn si(&mut self, i: usize) -> Result<()> {
        self.push(Move::sigma_inv(i))
    }

    fn run(&mut self, w: &[Move], offset: usize) -> Result<()> {
        for &mv in w {
            self.push(mv.shifted(offset))?;
        }
        Ok(())
    }

    fn at(&self, pos: usize) -> i64 {
        self.v[pos - 1]
    }

    /// (y,y,c) at i.. becomes (c,y,y).
    fn hop_right(&mut self, i: usize) -> Result<()> {
        self.si(i + 1)?;
        self.si(i)
    }

    /// (c,y,y) at i.. becomes (y,y,c).
    fn hop_left(&mut self, i: usize) -> Result<()> {
        self.s(i)?;
        self.s(i + 1)
    }

    /// (c,y,y) at i.. becomes (c,2c-y,2c-y).
    fn reflect(&mut self, i: usize) -> Result<()> {
        self.s(i)?;
        self.s(i + 1)?;
        self.s(i + 1)?;
        self.s(i)
    }
}

fn triple_at(b: &mut Builder, o: usize) -> Result<()> {
    loop {
        let (a1, a2, a3) = (b.at(o), b.at(o + 1), b.at(o + 2));
        if a1 == a2 || a2 == a3 || a1 == a3 {
            break;
        }
        let (x1, x2, x3) = if a1 < a3 { (a1, a2, a3) } else { (-a1, -a2, -a3) };
        if x2 < x1 {
            b.si(o)?;
        } else if x2 < x3 {
            b.si(o + 1)?;
        } else {
            b.s(o + 1)?;
        }
    }
    let (a1, a2, a3) = (b.at(o), b.at(o + 1), b.at(o + 2));
    if a1 == a2 && a2 == a3 {
        return Ok(());
    }
    if a1 == a3 {
        b.si(o)?;
    } else if a1 == a2 {
        b.si(o + 1)?;
        b.si(o)?;
    }
    if b.at(o) > b.at(o + 1) {
        b.reflect(o)?;
    }
    Ok(())
}

/// Reduces a triple to (x,y,y) with x <= y.
pub fn triple_reduce(v: &[i64]) -> Result<(Vec<i64>, MoveWord)> {
    if v.len() != 3 {
        return Err(Error::Precondition(format!("triple_reduce needs length 3, got {}", v.len())));
    }
    let mut b = Builder::new(v);
    triple_at(&mut b, 1)?;
    Ok((b.v, MoveWord(b.word)))
}

/// Odd window [o, o+len): single entry followed by pairs, pair offsets
/// reduced to {0, d}, zero-offset pairs first.
fn odd_window(b: &mut Builder, o: usize, len: usize) -> Result<()> {
    if len < 3 || gcd_diff(&b.v[o - 1..o - 1 + len])? == 0 {
        return Ok(());
    }
    let mut start = o + len - 3;
    loop {
        triple_at(b, start)?;
        if start == o {
            break;
        }
        start -= 2;
    }
    let k = (len - 1) / 2;
    // Slot j (1-based) holds the pair at positions o+2j-1, o+2j.
    let off = |b: &Builder, j: usize| b.at(o + 2 * j - 1) - b.at(o);
    let swap = |b: &mut Builder, j: usize| -> Result<()> {
        let i = o + 2 * j - 1;
        b.hop_right(i)?;
        b.hop_right(i + 1)
    };
    let reflect_single = |b: &mut Builder| b.reflect(o);
    let reflect_pivot = |b: &mut Builder| b.reflect(o + 2);
    loop {
        let offs: Vec<i64> = (1..=k).map(|j| off(b, j)).collect();
        let Some(mu) = offs.iter().filter(|e| **e != 0).map(|e| e.abs()).min() else {
            break;
        };
        if offs.iter().all(|e| e.abs() == mu || *e == 0) {
            break;
        }
        let j0 = 1 + offs.iter().position(|e| e.abs() == mu).unwrap();
        for j in (1..j0).rev() {
            swap(b, j)?;
        }
        if off(b, 1) < 0 {
            reflect_single(b)?;
        }
        for j in 2..=k {
            for t in (2..j).rev() {
                swap(b, t)?;
            }
            let mut e = off(b, 2);
            while e >= 3 * mu {
                reflect_pivot(b)?;
                reflect_single(b)?;
                reflect_pivot(b)?;
                reflect_single(b)?;
                e = off(b, 2);
            }
            while e < -mu {
                reflect_single(b)?;
                reflect_pivot(b)?;
                reflect_single(b)?;
                reflect_pivot(b)?;
                e = off(b, 2);
            }
            if e > mu {
                reflect_pivot(b)?;
            }
        }
    }
    for j in 1..=k {
        if off(b, j) < 0 {
            for t in (1..j).rev() {
                swap(b, t)?;
            }
            reflect_single(b)?;
            for t in 1..j {
                swap(b, t)?;
            }
        }
    }
    for pass in 0..k {
        for j in 1..k - pass {
            if off(b, j) > off(b, j + 1) {
                swap(b, j)?;
            }
        }
    }
    Ok(())
}

/// Word carrying an odd-length slice to its normal form.
fn odd_word(v: &[i64]) -> Result<(Vec<i64>, Vec<Move>)> {
    let mut b = Builder::new(v);
    odd_window(&mut b, 1, v.len())?;
    Ok((b.v, b.word))
}

/// Replace the odd window starting at `o` by `target`, which must share its
/// braid invariants.
fn replace_window(b: &mut Builder, o: usize, target: &[i64]) -> Result<()> {
    let len = target.len();
    let (r1, w1) = odd_word(&b.v[o - 1..o - 1 + len])?;
    let (r2, w2) = odd_word(target)?;
    if r1 != r2 {
        return Err(Error::Precondition(format!(
            "internal: window replacement {:?} -> {target:?} changes invariants",
            &b.v[o - 1..o - 1 + len]
        )));
    }
    b.run(&w1, o - 1)?;
    b.run(&MoveWord(w2).inverse().0, o - 1)
}

/// (d, y, (d+g)^q) at the front becomes ((d-g)^q, 2d-y, d); q even.
fn flip_word(q: usize) -> Vec<Move> {
    let mut w = vec![Move::sigma_inv(1)];
    for j in 2..=q + 1 {
        w.push(Move::sigma_inv(j));
        w.push(Move::sigma(j - 1));
    }
    w
}

fn f_shape(x: i64, p: usize, z: i64, q: usize, d: i64) -> Vec<i64> {
    let mut v = vec![x; p];
    v.push(z);
    v.extend(std::iter::repeat(x + d).take(q));
    v
}

/// Takes (x^p, z, (x+d)^q) to the same shape shifted by 2d.
fn shift_up(b: &mut Builder, x: i64, p: usize, z: i64, q: usize, d: i64) -> Result<()> {
    let m = p + q + 1;
    if p % 2 == 0 {
        for j in (2..=p + 1).rev() {
            b.s(j)?;
        }
        b.s(1)?;
        b.s(1)?;
        for j in 2..=p {
            b.s(j)?;
        }
        b.si(p + 1)?;
        let mut target = vec![x + 2 * d, z + 2 * d];
        target.extend(std::iter::repeat(x + 3 * d).take(q));
        replace_window(b, p, &target)
    } else if p >= 3 {
        b.hop_right(p - 1)?;
        b.s(p + 1)?;
        b.s(p)?;
        for i in (1..=p).rev() {
            b.hop_left(i)?;
        }
        let target = f_shape(x + 2 * d, p - 1, z + 2 * d, q, d);
        replace_window(b, 2, &target)
    } else {
        let g = flip_word(m - 2);
        b.run(&g, 0)?;
        shift_up(b, x - d, m - 2, 2 * x - z, 1, d)?;
        b.run(&MoveWord(g).inverse().0, 0)
    }
}

fn shift_down(b: &mut Builder, x: i64, p: usize, z: i64, q: usize, d: i64) -> Result<()> {
    let mut scratch = Builder::new(&f_shape(x - 2 * d, p, z - 2 * d, q, d));
    shift_up(&mut scratch, x - 2 * d, p, z - 2 * d, q, d)?;
    b.run(&MoveWord(scratch.word).inverse().0, 0)
}

fn even_form(b: &mut Builder, target: &[i64]) -> Result<()> {
    let m = b.v.len();
    let d = gcd_diff(&b.v)?;
    let r = residue(b.v[0], d);
    let p = b.v.iter().filter(|&&a| residue(a, 2 * d) == r).count();
    let class = if p % 2 == 0 || p == m - 1 { r } else { residue(r + d, 2 * d) };
    for end in [m, m - 1] {
        let i = (1..=end)
            .rev()
            .find(|&i| residue(b.at(i), 2 * d) == class)
            .ok_or_else(|| Error::Precondition("internal: class count".into()))?;
        for j in i..end {
            b.s(j)?;
        }
    }
    triple_at(b, m - 2)?;
    odd_window(b, 1, m - 1)?;
    let dl = b.at(1);
    let pp = b.v[..m - 1].iter().take_while(|&&a| a == dl).count();
    let y = b.at(m);
    let mut i = m - 2;
    while i > pp {
        b.hop_right(i)?;
        i -= 2;
    }
    let qq = m - 1 - pp;
    let (x0, p0, z0, q0) = if residue(dl, 2 * d) == r {
        (dl, pp, y, qq)
    } else {
        for t in 0..(pp - 1) / 2 {
            let mut i = pp - 2 * t - 1;
            while i + 1 < m - 2 * t {
                b.hop_right(i)?;
                i += 1;
            }
        }
        b.run(&flip_word(qq), 0)?;
        (dl - d, qq, 2 * dl - y, pp)
    };
    if b.v != f_shape(x0, p0, z0, q0, d) {
        return Err(Error::Precondition(format!("internal: unexpected shape {:?}", b.v)));
    }
    let mut x = x0;
    while x < r {
        shift_up(b, x, p0, z0 + (x - x0), q0, d)?;
        x += 2 * d;
    }
    while x > r {
        shift_down(b, x, p0, z0 + (x - x0), q0, d)?;
        x -= 2 * d;
    }
    if b.v != target {
        return Err(Error::Precondition(format!(
            "internal: even normal form reached {:?}, expected {target:?}",
            b.v
        )));
    }
    Ok(())
}

/// The braid representative of `v` and a sigma word reaching it.
pub fn normal_form_word(v: &[i64]) -> Result<(Vec<i64>, MoveWord)> {
    check_len(v)?;
    let target = super::representative(v, Relation::Braid)?;
    let m = v.len();
    let mut b = Builder::new(v);
    let d = gcd_diff(v)?;
    if d == 0 {
        return Ok((b.v, MoveWord(b.word)));
    }
    if m == 2 {
        let (a, c) = (v[0], v[1]);
        let n = (target[0] - a) / (c - a);
        for _ in 0..n.unsigned_abs() {
            if n > 0 {
                b.s(1)?;
            } else {
                b.si(1)?;
            }
        }
    } else if m % 2 == 1 {
        odd_window(&mut b, 1, m)?;
    } else {
        even_form(&mut b, &target)?;
    }
    if b.v != target {
        return Err(Error::Precondition(format!(
            "internal: normal form of {v:?} reached {:?}, expected {target:?} (delta {})",
            b.v,
            delta(v)?
        )));
    }
    Ok((b.v, MoveWord(b.word)))
}
