//! Products: s-forms, pinch reduction and normalization into block form.

use super::{Block, Element, GroupTower};
use crate::lambda::LambdaVec;

/// `g_1 s^{ε_1} g_2 … s^{ε_k} g_{k+1}` with all `g_j` below the top level.
#[derive(Debug, Clone)]
pub(crate) struct SForm {
    pub gs: Vec<Element>,
    pub blocks: Vec<(usize, i8)>,
}

const SATURATION_CAP: i64 = 1 << 24;
const SETTLE_CAP: usize = 64;

#[derive(Clone, Copy)]
enum Round {
    Up,
    Down,
}

/// Extremal lattice combination `Σ e_k b_k` that is `≥ target` (`Up`) or
/// `≤ target` (`Down`); `None` if the extremum does not exist.
fn lattice_round(target: &LambdaVec, basis: &[LambdaVec], dir: Round) -> Option<Vec<i64>> {
    let m = basis.len();
    let mut e = vec![0i64; m];
    let mut rem = target.clone();
    for k in (0..m).rev() {
        let h = basis[k].height();
        if rem.height() > h {
            return None;
        }
        let b = basis[k].coord(h);
        let c = rem.coord(h);
        if k > 0 {
            if c % b != 0 {
                return None;
            }
            e[k] = c / b;
            rem = &rem - &basis[k].scale(e[k]);
            continue;
        }
        let mut q = c.div_euclid(b);
        match dir {
            Round::Down => {
                while basis[k].scale(q) > rem {
                    q -= 1;
                }
                while basis[k].scale(q + 1) <= rem {
                    q += 1;
                }
            }
            Round::Up => {
                while basis[k].scale(q) < rem {
                    q += 1;
                }
                while basis[k].scale(q - 1) >= rem {
                    q -= 1;
                }
            }
        }
        e[k] = q;
    }
    Some(e)
}

impl GroupTower {
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        if a.is_identity() {
            return b.clone();
        }
        if b.is_identity() {
            return a.clone();
        }
        let level = a.level().max(b.level());
        if level == 1 {
            let (x, y) = (a.as_word().unwrap(), b.as_word().unwrap());
            return Element::Word(x.mul(y));
        }
        let sa = self.to_sform(a, level);
        let sb = self.to_sform(b, level);
        let mut gs = sa.gs;
        let last = gs.pop().unwrap();
        gs.push(self.mul(&last, &sb.gs[0]));
        gs.extend(sb.gs.into_iter().skip(1));
        let mut blocks = sa.blocks;
        blocks.extend(sb.blocks);
        let sf = self.britton(SForm { gs, blocks });
        self.normalize(sf, level)
    }

    /// Left-to-right product of a sequence.
    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(&self, it: I) -> Element {
        it.into_iter().fold(Element::identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn inv(&self, a: &Element) -> Element {
        match a {
            Element::Word(w) => Element::Word(w.inverse()),
            Element::Hnn { level, .. } => {
                let sf = self.to_sform(a, *level);
                let gs = sf.gs.iter().rev().map(|g| self.inv(g)).collect();
                let blocks = sf.blocks.iter().rev().map(|&(l, s)| (l, -s)).collect();
                self.normalize(SForm { gs, blocks }, *level)
            }
        }
    }

    pub fn pow(&self, a: &Element, k: i64) -> Element {
        if let Element::Word(w) = a {
            return Element::Word(w.pow(k));
        }
        let mut base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = Element::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `Π gens_k^{exps_k}`.
    pub(crate) fn gen_product(&self, gens: &[Element], exps: &[i64]) -> Element {
        gens.iter()
            .zip(exps)
            .filter(|(_, &e)| e != 0)
            .fold(Element::identity(), |acc, (g, &e)| self.mul(&acc, &self.pow(g, e)))
    }

    pub(crate) fn tail_element(&self, b: &Block) -> Element {
        let (gens, _) = self.letters[b.letter].tail(b.sign);
        self.gen_product(gens, &b.offset)
    }

    /// Exponents over a graded generating list, dividing off the top
    /// generator first.
    pub fn abelian_exponents(&self, x: &Element, gens: &[Element]) -> Option<Vec<i64>> {
        let mut exps = vec![0i64; gens.len()];
        let mut rem = x.clone();
        for k in (0..gens.len()).rev() {
            if rem.is_identity() {
                break;
            }
            let lr = self.length(&rem);
            let lg = self.length(&gens[k]);
            let (hr, hk) = (lr.height(), lg.height());
            if hr > hk {
                return None;
            }
            if hr < hk {
                continue;
            }
            let (c, b) = (lr.coord(hk), lg.coord(hk));
            if c % b != 0 {
                return None;
            }
            let q = c / b;
            let mut found = false;
            for e in [q, -q] {
                let cand = self.mul(&rem, &self.pow(&gens[k], -e));
                if self.height(&cand) < hk {
                    rem = cand;
                    exps[k] = e;
                    found = true;
                    break;
                }
            }
            if !found {
                return None;
            }
        }
        rem.is_identity().then_some(exps)
    }

    pub(crate) fn to_sform(&self, e: &Element, level: usize) -> SForm {
        match e {
            Element::Hnn { level: l, pieces, blocks } if *l == level => {
                let mut gs = vec![pieces[0].clone()];
                for (b, p) in blocks.iter().zip(&pieces[1..]) {
                    gs.push(self.mul(&self.tail_element(b), p));
                }
                SForm { gs, blocks: blocks.iter().map(|b| (b.letter, b.sign)).collect() }
            }
            _ => SForm { gs: vec![e.clone()], blocks: Vec::new() },
        }
    }

    /// Removes `s^-1 c s` (c ∈ A) and `s c s^-1` (c ∈ B) patterns.
    pub(crate) fn britton(&self, sf: SForm) -> SForm {
        let mut gs_in = sf.gs.into_iter();
        let mut gs = vec![gs_in.next().unwrap()];
        let mut blocks: Vec<(usize, i8)> = Vec::new();
        for ((l, s), next) in sf.blocks.into_iter().zip(gs_in) {
            if let Some(&(pl, ps)) = blocks.last() {
                if pl == l && ps == -s {
                    let letter = &self.letters[l];
                    let (from, to) =
                        if ps < 0 { (&letter.source, &letter.target) } else { (&letter.target, &letter.source) };
                    if let Some(e) = self.abelian_exponents(gs.last().unwrap(), from) {
                        let img = self.gen_product(to, &e);
                        blocks.pop();
                        gs.pop();
                        let prev = gs.pop().unwrap();
                        gs.push(self.mul(&self.mul(&prev, &img), &next));
                        continue;
                    }
                }
            }
            blocks.push((l, s));
            gs.push(next);
        }
        SForm { gs, blocks }
    }

    /// Canonical block form of a pinch-free s-form.
    pub(crate) fn normalize(&self, sf: SForm, level: usize) -> Element {
        if sf.blocks.is_empty() {
            return sf.gs.into_iter().next().unwrap();
        }
        let k = sf.blocks.len();
        let mut pieces: Vec<Element> = Vec::with_capacity(k + 1);
        let mut offs: Vec<Vec<i64>> = Vec::with_capacity(k);
        let mut cur = sf.gs[0].clone();
        for j in 0..k {
            let (l, s) = sf.blocks[j];
            let mut delta = vec![0i64; self.letters[l].source.len()];
            let mut rounds = 0;
            loop {
                let (p, d) = self.head_normalize(&cur, l, s);
                cur = p;
                add_assign(&mut delta, &d);
                if j == 0 {
                    break;
                }
                let (pl, ps) = sf.blocks[j - 1];
                let (p2, e) = self.tail_normalize(&cur, pl, ps);
                if e.iter().all(|&x| x == 0) {
                    break;
                }
                cur = p2;
                add_assign(&mut offs[j - 1], &e);
                rounds += 1;
                assert!(rounds < SETTLE_CAP, "piece normalization did not settle");
            }
            if j > 0 {
                self.descend_seam(&mut cur, &mut offs[j - 1], &mut delta, sf.blocks[j - 1], (l, s));
            }
            pieces.push(cur);
            offs.push(delta);
            let (p, e) = self.tail_normalize(&sf.gs[j + 1], l, s);
            add_assign(&mut offs[j], &e);
            cur = p;
        }
        pieces.push(cur);
        let blocks: Vec<Block> =
            sf.blocks.iter().zip(offs).map(|(&(letter, sign), offset)| Block { letter, sign, offset }).collect();
        let mut e = Element::Hnn { level, pieces, blocks };
        self.slide_right(&mut e);
        e
    }

    /// Among equal-length representatives of a piece between two blocks,
    /// picks the one with the smallest left offsets (those not handled by
    /// [`Self::slide_right`]).
    fn descend_seam(
        &self,
        cur: &mut Element,
        left: &mut [i64],
        right: &mut [i64],
        (pl, ps): (usize, i8),
        (l, s): (usize, i8),
    ) {
        let (tgens, _) = self.letters[pl].tail(ps);
        let (hgens, _) = self.letters[l].head(s);
        let formal = |p: &Element, a: &[i64], b: &[i64]| {
            let la = self.tau(&Block { letter: pl, sign: ps, offset: a.to_vec() });
            let lb = self.tau(&Block { letter: l, sign: s, offset: b.to_vec() });
            &(&la + &self.length(p)) + &lb
        };
        for i in 0..tgens.len() {
            let m = self.product([&self.inv(cur), &tgens[i], &*cur]);
            if self.abelian_exponents(&m, hgens).is_some() {
                continue;
            }
            for _ in 0..SETTLE_CAP {
                let (p, d) = self.head_normalize(&self.mul(&tgens[i], cur), l, s);
                let (_, e) = self.tail_normalize(&p, pl, ps);
                if e.iter().any(|&x| x != 0) {
                    break;
                }
                let mut a = left.to_vec();
                a[i] -= 1;
                let mut b = right.to_vec();
                add_assign(&mut b, &d);
                if formal(&p, &a, &b) != formal(cur, left, right) {
                    break;
                }
                *cur = p;
                left.copy_from_slice(&a);
                right.copy_from_slice(&b);
            }
        }
    }

    /// Moves offset components that commute through the following piece
    /// into the next block.
    fn slide_right(&self, e: &mut Element) {
        let Element::Hnn { pieces, blocks, .. } = e else { return };
        for j in 0..blocks.len().saturating_sub(1) {
            let q = &pieces[j + 1];
            let qi = self.inv(q);
            let (tail_gens, _) = self.letters[blocks[j].letter].tail(blocks[j].sign);
            let (next_l, next_s) = (blocks[j + 1].letter, blocks[j + 1].sign);
            let (head_gens, _) = self.letters[next_l].head(next_s);
            for (i, tg) in tail_gens.iter().enumerate() {
                let amount = blocks[j].offset[i];
                if amount == 0 {
                    continue;
                }
                let m = self.mul(&self.mul(&qi, tg), q);
                if let Some(ex) = self.abelian_exponents(&m, head_gens) {
                    blocks[j].offset[i] = 0;
                    for (o, x) in blocks[j + 1].offset.iter_mut().zip(ex) {
                        *o += amount * x;
                    }
                }
            }
        }
    }

    /// `x = p · Π head_k^{δ_k}` with `p ∘ s^sign` cancellation-free and
    /// `p` carrying no positive head period on its right.
    pub(crate) fn head_normalize(&self, x: &Element, letter: usize, sign: i8) -> (Element, Vec<i64>) {
        let (gens, orient) = self.letters[letter].head(sign);
        let m = gens.len();
        if x.is_identity() {
            return (Element::identity(), vec![0; m]);
        }
        let pos: Vec<Element> = gens.iter().zip(&orient).map(|(g, &o)| self.pow(g, o as i64)).collect();
        let basis: Vec<LambdaVec> = gens.iter().map(|g| self.length(g)).collect();
        let p = &pos[m - 1];
        let xi = self.inv(x);

        // x ends with a negative head period: cancellation into the block.
        let mut k = 1i64;
        loop {
            let w = self.pow(p, k);
            let r = self.com(&xi, &w);
            if r.is_identity() {
                break;
            }
            let lr = self.length(&r);
            if lr < self.length(&w) {
                let e = lattice_round(&lr, &basis, Round::Up).expect("head lattice has no minimum");
                let d = self.gen_product(&pos, &e);
                let delta = e.iter().zip(&orient).map(|(e, &o)| -e * o as i64).collect();
                return (self.mul(x, &d), delta);
            }
            k *= 2;
            assert!(k < SATURATION_CAP, "unbounded cancellation against a block head");
        }

        // x ends with a positive head period: absorb it into the block.
        if self.height(x) > self.height(p) && self.ends_with_infinite(x, p) {
            return self.absorb_infinite(x, letter, sign, &orient, p);
        }
        let mut k = 1i64;
        loop {
            let w = self.pow(p, k);
            let r = self.com(&xi, &self.inv(&w));
            if r.is_identity() {
                return (x.clone(), vec![0; m]);
            }
            let lr = self.length(&r);
            if lr < self.length(&w) {
                let e = lattice_round(&lr, &basis, Round::Down).expect("head lattice has no maximum");
                let d = self.gen_product(&pos, &e);
                let delta = e.iter().zip(&orient).map(|(e, &o)| e * o as i64).collect();
                return (self.mul(x, &self.inv(&d)), delta);
            }
            k *= 2;
            assert!(k < SATURATION_CAP, "unbounded head period");
        }
    }

    /// `y = Π tail_k^{δ_k} · p`, mirror of [`Self::head_normalize`].
    pub(crate) fn tail_normalize(&self, y: &Element, letter: usize, sign: i8) -> (Element, Vec<i64>) {
        let (p, d) = self.head_normalize(&self.inv(y), letter, -sign);
        (self.inv(&p), d.into_iter().map(|x| -x).collect())
    }

    /// Whether `x` ends with `p^k` for every `k` (the run continues into a
    /// block tail of higher height).
    pub(crate) fn ends_with_infinite(&self, x: &Element, p: &Element) -> bool {
        let Element::Hnn { pieces, .. } = x else { return false };
        let y = pieces.last().unwrap();
        let lp = self.length(p);
        let hp = lp.height();
        if self.height(y) > hp {
            return self.ends_with_infinite(y, p);
        }
        let k = self.length(y).coord(hp).max(0) / lp.coord(hp) + 3;
        let w = self.pow(p, k);
        let r = self.com(&self.inv(x), &self.inv(&w));
        self.length(&r) >= self.length(&w)
    }

    /// Coset representative for an `x` ending in an infinite positive head
    /// period: the last block's top offset is cleared (rightward tie-break).
    fn absorb_infinite(&self, x: &Element, letter: usize, sign: i8, orient: &[i8], p: &Element) -> (Element, Vec<i64>) {
        let Element::Hnn { pieces, blocks, .. } = x else { unreachable!() };
        let y = pieces.last().unwrap();
        let m = orient.len();
        if self.height(y) > self.height(p) {
            let (_, d) = self.head_normalize(y, letter, sign);
            let (gens, _) = self.letters[letter].head(sign);
            let de = self.gen_product(gens, &d);
            return (self.mul(x, &self.inv(&de)), d);
        }
        let beta = blocks.last().unwrap();
        let (_, to) = self.letters[beta.letter].tail(beta.sign);
        let top = to.len() - 1;
        let t = beta.offset[top] * to[top] as i64;
        let mut d = vec![0; m];
        d[m - 1] = t * orient[m - 1] as i64;
        (self.mul(x, &self.pow(p, -t)), d)
    }
}

fn add_assign(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}
