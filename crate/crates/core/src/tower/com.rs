//! Lengths, common prefixes and the operations derived from them.

use std::cmp::Ordering;

use super::{Block, Element, GroupTower, Result, TowerError};
use crate::lambda::{Height, LambdaVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

const WINDOW_CAP: i64 = 1 << 24;

impl GroupTower {
    pub fn length(&self, g: &Element) -> LambdaVec {
        let mut out = LambdaVec::zero(self.rank);
        self.add_length(g, &mut out);
        out
    }

    fn add_length(&self, g: &Element, acc: &mut LambdaVec) {
        match g {
            Element::Word(w) => {
                *acc = acc.try_add(&LambdaVec::unit(self.rank, 1).scale(w.len() as i64)).expect("length overflow");
            }
            Element::Hnn { pieces, blocks, .. } => {
                for p in pieces {
                    self.add_length(p, acc);
                }
                for b in blocks {
                    *acc = &*acc + &self.block_length(b);
                }
            }
        }
    }

    pub(crate) fn block_length(&self, b: &Block) -> LambdaVec {
        let level = self.letters[b.letter].level;
        &LambdaVec::unit(self.rank, level) + &self.tau(b)
    }

    /// Length contributed by a block's offset.
    pub(crate) fn tau(&self, b: &Block) -> LambdaVec {
        let (gens, orient) = self.letters[b.letter].tail(b.sign);
        let mut t = LambdaVec::zero(self.rank);
        for ((g, &o), &e) in gens.iter().zip(&orient).zip(&b.offset) {
            if e != 0 {
                t = &t + &self.length(g).scale(e * o as i64);
            }
        }
        t
    }

    pub fn height(&self, g: &Element) -> Height {
        self.length(g).height()
    }

    /// Top coordinate of the length: the number of top-level blocks.
    pub fn lambda(&self, g: &Element) -> i64 {
        self.length(g).lambda_top()
    }

    pub fn equals(&self, g: &Element, h: &Element) -> bool {
        g == h
    }

    /// `g · h^-1 = ε`, independent of normal-form uniqueness.
    pub fn equals_by_reduction(&self, g: &Element, h: &Element) -> bool {
        self.mul(g, &self.inv(h)).is_identity()
    }

    pub fn commutes(&self, g: &Element, h: &Element) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn commutator(&self, g: &Element, h: &Element) -> Element {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.product([&gi, &hi, g, h])
    }

    /// Doubled Gromov product `2c(g,f) = l(g) + l(f) - l(g^-1 f)`.
    pub fn gromov2(&self, g: &Element, f: &Element) -> LambdaVec {
        let d = self.length(&self.mul(&self.inv(g), f));
        &(&self.length(g) + &self.length(f)) - &d
    }

    /// Positive period generator at the head of a block.
    pub(crate) fn head_period(&self, letter: usize, sign: i8) -> Element {
        let (gens, orient) = self.letters[letter].head(sign);
        self.pow(gens.last().unwrap(), *orient.last().unwrap() as i64)
    }

    fn block_element(&self, b: &Block) -> Element {
        let s = self.stable_element(b.letter, b.sign);
        self.mul(&s, &self.tail_element(b))
    }

    /// Longest common initial segment.
    pub fn com(&self, x: &Element, y: &Element) -> Element {
        let level = x.level().max(y.level());
        if level == 1 {
            let (a, b) = (x.as_word().unwrap(), y.as_word().unwrap());
            return Element::Word(a.com(b));
        }
        let single = |e: &Element| -> (Vec<Element>, Vec<Block>) {
            match e {
                Element::Hnn { level: l, pieces, blocks } if *l == level => (pieces.clone(), blocks.clone()),
                _ => (vec![e.clone()], Vec::new()),
            }
        };
        let (xp, xb) = single(x);
        let (yp, yb) = single(y);
        let (mut i, mut j) = (0usize, 0usize);
        let mut cx = xp[0].clone();
        let mut cy = yp[0].clone();
        let mut acc = Element::identity();
        loop {
            let (bx, by) = (xb.get(i), yb.get(j));
            if let (Some(bx), Some(by)) = (bx, by) {
                if cx == cy && bx.letter == by.letter && bx.sign == by.sign {
                    acc = self.mul(&acc, &cx);
                    let (tx, ty) = (self.tau(bx), self.tau(by));
                    let (gens, _) = self.letters[bx.letter].tail(bx.sign);
                    match tx.cmp(&ty) {
                        Ordering::Equal => {
                            acc = self.mul(&acc, &self.block_element(bx));
                            cx = xp[i + 1].clone();
                            cy = yp[j + 1].clone();
                        }
                        Ordering::Less => {
                            acc = self.mul(&acc, &self.block_element(bx));
                            let rem: Vec<i64> = by.offset.iter().zip(&bx.offset).map(|(a, b)| a - b).collect();
                            cx = xp[i + 1].clone();
                            cy = self.mul(&self.gen_product(gens, &rem), &yp[j + 1]);
                        }
                        Ordering::Greater => {
                            acc = self.mul(&acc, &self.block_element(by));
                            let rem: Vec<i64> = bx.offset.iter().zip(&by.offset).map(|(a, b)| a - b).collect();
                            cx = self.mul(&self.gen_product(gens, &rem), &xp[i + 1]);
                            cy = yp[j + 1].clone();
                        }
                    }
                    i += 1;
                    j += 1;
                    continue;
                }
            }
            let px = bx.map(|b| self.head_period(b.letter, b.sign));
            let py = by.map(|b| self.head_period(b.letter, b.sign));
            let mut k = 1i64;
            loop {
                let wx = px.as_ref().map_or(cx.clone(), |p| self.mul(&cx, &self.pow(p, k)));
                let wy = py.as_ref().map_or(cy.clone(), |p| self.mul(&cy, &self.pow(p, k)));
                let c = self.com(&wx, &wy);
                let lc = self.length(&c);
                if (px.is_none() || lc < self.length(&wx)) && (py.is_none() || lc < self.length(&wy)) {
                    return self.mul(&acc, &c);
                }
                k *= 2;
                assert!(k < WINDOW_CAP, "unbounded common prefix between blocks");
            }
        }
    }

    /// `g = c^-1 ∘ core ∘ c` with `core` cyclically reduced.
    pub fn cyclic_decompose(&self, g: &Element) -> (Element, Element) {
        let ci = self.com(g, &self.inv(g));
        let c = self.inv(&ci);
        let core = self.product([&c, g, &ci]);
        (c, core)
    }

    pub fn is_cyclically_reduced(&self, g: &Element) -> bool {
        self.com(g, &self.inv(g)).is_identity()
    }

    /// Strips `p^N` from one side: `g = p^N ∘ g'` (left) or `g = g' ∘ p^N`
    /// (right), `N` of maximal absolute value.
    pub fn strip_periodic(&self, g: &Element, p: &Element, side: Side) -> Result<(Element, i64)> {
        if p.is_identity() {
            return Err(TowerError::Identity);
        }
        if side == Side::Right {
            let (h, n) = self.strip_periodic(&self.inv(g), &self.inv(p), Side::Left)?;
            return Ok((self.inv(&h), n));
        }
        let lg = self.length(g);
        let lp = self.length(p);
        for dir in [1i64, -1] {
            let q = self.pow(p, dir);
            let qi = self.inv(&q);
            let mut n = 0i64;
            let mut rest = g.clone();
            loop {
                let next = self.mul(&qi, &rest);
                let expect = &lg - &lp.scale(n + 1);
                if self.length(&next) != expect {
                    break;
                }
                n += 1;
                rest = next;
                if lp.height() < lg.height() && n == 64 && self.ends_with_infinite(&self.inv(g), &qi) {
                    return Err(TowerError::rejected(
                        "unbounded-period",
                        "element begins with an infinite power of the period",
                    ));
                }
            }
            if n > 0 {
                return Ok((rest, n * dir));
            }
        }
        Ok((g.clone(), 0))
    }
}
