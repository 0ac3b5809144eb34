//! Abelian subgroups, roots, centralizers and conjugacy.

use super::{Element, GroupTower, Result, TowerError};

/// `conjugator^-1 ⟨gens⟩ conjugator`, gens graded by strictly increasing
/// height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianSubgroup {
    pub gens: Vec<Element>,
    pub conjugator: Element,
}

impl AbelianSubgroup {
    pub fn new(gens: Vec<Element>) -> Self {
        AbelianSubgroup { gens, conjugator: Element::identity() }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }
}

const ORBIT_CAP: usize = 64;
const CONJ_BOX: i64 = 3;

impl GroupTower {
    /// The generators as actual group elements.
    pub fn subgroup_elements(&self, a: &AbelianSubgroup) -> Vec<Element> {
        let ci = self.inv(&a.conjugator);
        a.gens.iter().map(|g| self.product([&ci, g, &a.conjugator])).collect()
    }

    pub fn abelian_membership(&self, x: &Element, a: &AbelianSubgroup) -> Option<Vec<i64>> {
        let ci = self.inv(&a.conjugator);
        let y = self.product([&a.conjugator, x, &ci]);
        self.abelian_exponents(&y, &a.gens)
    }

    /// Primitive root of a cyclically reduced element: `g = r^k`, `k` maximal.
    pub fn root(&self, g: &Element) -> Result<(Element, i64)> {
        if g.is_identity() {
            return Err(TowerError::Identity);
        }
        match g {
            Element::Word(w) => {
                let (r, k) = w.root().map_err(|e| TowerError::rejected("root", e.to_string()))?;
                Ok((Element::Word(r), k))
            }
            Element::Hnn { pieces, blocks, .. } => {
                let k = blocks.len();
                for n in (2..=k).rev().filter(|n| k % n == 0) {
                    let m = k / n;
                    let mut r = Element::identity();
                    for j in 0..m {
                        r = self.mul(&r, &pieces[j]);
                        let s = self.stable_element(blocks[j].letter, blocks[j].sign);
                        r = self.product([&r, &s, &self.tail_element(&blocks[j])]);
                    }
                    let close = self.mul(&pieces[m], &self.inv(&pieces[0]));
                    for cand in [self.mul(&r, &close), r.clone()] {
                        if self.pow(&cand, n as i64) == *g {
                            return Ok((cand, n as i64));
                        }
                    }
                }
                Ok((g.clone(), 1))
            }
        }
    }

    /// Rewrites commuting generators into a graded basis.
    pub fn graded_basis(&self, gens: &[Element]) -> Vec<Element> {
        let mut gs: Vec<Element> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut guard = 0;
        loop {
            gs.retain(|g| !g.is_identity());
            gs.sort_by_key(|g| self.height(g));
            gs.dedup();
            let clash = (1..gs.len()).find(|&i| self.height(&gs[i]) == self.height(&gs[i - 1]));
            let Some(i) = clash else { break };
            let h = self.height(&gs[i]);
            let (x, y) = (gs[i - 1].clone(), gs[i].clone());
            let (big, small, bi) =
                if self.length(&x).coord(h) >= self.length(&y).coord(h) { (x, y, i - 1) } else { (y, x, i) };
            let c1 = self.mul(&big, &self.inv(&small));
            let c2 = self.mul(&big, &small);
            gs[bi] = if self.length(&c1) <= self.length(&c2) { c1 } else { c2 };
            guard += 1;
            assert!(guard < 100_000, "graded basis reduction diverged");
        }
        gs
    }

    pub fn centralizer(&self, g: &Element) -> Result<AbelianSubgroup> {
        if g.is_identity() {
            return Err(TowerError::Identity);
        }
        let (c, core) = self.cyclic_decompose(g);
        let (r, _) = self.root(&core)?;
        let mut cands = vec![r.clone()];

        // Orbit of the axis under pinches; closed loops centralize r.
        let mut states: Vec<(Element, Element)> = vec![(r.clone(), Element::identity())];
        let mut idx = 0;
        while idx < states.len() && states.len() < ORBIT_CAP {
            let (e, w) = states[idx].clone();
            idx += 1;
            let mut variants = vec![(e.clone(), Element::identity())];
            if let Element::Word(word) = &e {
                for (rot, x) in word.rotations().into_iter().skip(1) {
                    variants.push((Element::Word(rot), Element::Word(x)));
                }
            }
            for (ev, x) in variants {
                let hv = self.height(&ev);
                for (li, l) in self.letters.iter().enumerate() {
                    if l.level <= hv {
                        continue;
                    }
                    for sign in [1i8, -1] {
                        let (head, _) = l.head(sign);
                        let Some(ex) = self.abelian_exponents(&ev, head) else { continue };
                        let (tail, _) = l.tail(sign);
                        let e2 = self.gen_product(tail, &ex);
                        let w2 = self.product([&w, &x, &self.stable_element(li, sign)]);
                        match states.iter().find(|(s, _)| *s == e2) {
                            Some((_, old)) => cands.push(self.mul(&w2, &self.inv(old))),
                            None => states.push((e2, w2)),
                        }
                    }
                }
            }
        }
        for l in &self.letters {
            cands.extend(l.source.iter().cloned());
            cands.extend(l.target.iter().cloned());
        }
        cands.extend((0..self.letters.len()).map(|i| self.stable_element(i, 1)));
        cands.retain(|x| !x.is_identity() && self.commutes(x, &r));
        let gens = self.graded_basis(&cands);
        Ok(AbelianSubgroup { gens, conjugator: c })
    }

    /// Conjugacy by rotation of cyclically reduced forms plus small
    /// associated-subgroup twists. Sound; complete at the base level.
    pub fn is_conjugate(&self, a: &Element, b: &Element) -> bool {
        let (_, ca) = self.cyclic_decompose(a);
        let (_, cb) = self.cyclic_decompose(b);
        if self.length(&ca) != self.length(&cb) || ca.level() != cb.level() {
            return false;
        }
        if let (Element::Word(x), Element::Word(y)) = (&ca, &cb) {
            return x.is_conjugate(y);
        }
        for x in self.rotation_conjugators(&ca) {
            let rot = self.product([&self.inv(&x), &ca, &x]);
            if rot == cb {
                return true;
            }
            if let Element::Hnn { blocks, .. } = &rot {
                let (gens, _) = self.letters[blocks[0].letter].head(blocks[0].sign);
                for e in small_box(gens.len()) {
                    let h = self.gen_product(gens, &e);
                    if self.product([&self.inv(&h), &rot, &h]) == cb {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Prefixes ending at block boundaries or inside base-word pieces.
    fn rotation_conjugators(&self, g: &Element) -> Vec<Element> {
        let Element::Hnn { pieces, blocks, .. } = g else { return vec![Element::identity()] };
        let mut out = Vec::new();
        let mut prefix = Element::identity();
        for (j, p) in pieces.iter().enumerate().take(blocks.len()) {
            if let Element::Word(w) = p {
                for t in 0..w.len() {
                    out.push(self.mul(&prefix, &Element::Word(w.prefix(t))));
                }
            } else {
                out.push(prefix.clone());
            }
            prefix = self.mul(&prefix, p);
            out.push(prefix.clone());
            let s = self.stable_element(blocks[j].letter, blocks[j].sign);
            prefix = self.product([&prefix, &s, &self.tail_element(&blocks[j])]);
        }
        out
    }
}

fn small_box(m: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-CONJ_BOX..=CONJ_BOX).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
