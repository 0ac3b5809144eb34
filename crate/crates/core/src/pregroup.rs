//! The pregroup `P_Z` of a reduced generating set: membership, the partial
//! product, reduced sequences and the per-level HNN splitting.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hnn::{extend_hnn, Placement};
use crate::nielsen::{is_reduced, zero_ball, GenSet};
use crate::tower::{AbelianSubgroup, Element, GroupTower, Result, TowerError};
use crate::towerfile::TowerFile;
use crate::words::{FreeWord, SubgroupGraph};

/// Radius used to certify that `Z` is reduced.
pub const REDUCED_RADIUS: usize = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PSequence {
    pub items: Vec<Element>,
}

/// `x = g ∗ f ∗ h` with `g, h ∈ ⟨Z₀⟩` and `f = letters[f]`, or `x ∈ ⟨Z₀⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PzItem {
    Zero,
    Letter { g: Element, f: usize, h: Element },
}

/// `P_Z` over a fixed tower and generating set.
pub struct Pregroup<'a> {
    t: &'a GroupTower,
    zero: Vec<Element>,
    /// `Z₊^{±1}`.
    letters: Vec<Element>,
    graph: Option<SubgroupGraph>,
}

impl<'a> Pregroup<'a> {
    /// Fails unless `Z` passes [`is_reduced`].
    pub fn new(t: &'a GroupTower, z: &GenSet) -> Result<Self> {
        if let Some(v) = is_reduced(t, z, REDUCED_RADIUS).first() {
            return Err(TowerError::rejected("reduced-set", format!("generating set is not reduced: {v}")));
        }
        Ok(Self::unchecked(t, z))
    }

    pub fn unchecked(t: &'a GroupTower, z: &GenSet) -> Self {
        let zero: Vec<Element> = z.zero(t).iter().map(|&id| z.element(id).clone()).collect();
        let letters = z
            .plus(t)
            .iter()
            .flat_map(|&id| {
                let e = z.element(id).clone();
                [t.inv(&e), e]
            })
            .collect();
        let words: Option<Vec<FreeWord>> = zero.iter().map(|e| e.as_word().cloned()).collect();
        Pregroup { t, zero, letters, graph: words.map(|w| SubgroupGraph::new(&w)) }
    }

    pub fn letters(&self) -> &[Element] {
        &self.letters
    }

    pub fn zero_gens(&self) -> &[Element] {
        &self.zero
    }

    /// `x ∈ ⟨Z₀⟩`: exact when `Z₀` is a set of base words, otherwise
    /// `λ(x) = 0` (which characterizes `⟨Z₀⟩ = G_{n-1}` for reduced `Z`).
    pub fn in_zero(&self, x: &Element) -> bool {
        if self.t.lambda(x) != 0 {
            return false;
        }
        match (&self.graph, x) {
            (Some(g), Element::Word(w)) => g.contains(w),
            (Some(_), _) => false,
            (None, _) => true,
        }
    }

    pub fn decompose(&self, x: &Element) -> Option<PzItem> {
        let t = self.t;
        if self.in_zero(x) {
            return Some(PzItem::Zero);
        }
        let lx = t.lambda(x);
        for (fi, f) in self.letters.iter().enumerate() {
            if t.lambda(f) != lx {
                continue;
            }
            if let Some((g, h)) = self.split_around(x, f) {
                return Some(PzItem::Letter { g, f: fi, h });
            }
        }
        None
    }

    /// `g, h ∈ ⟨Z₀⟩` with `x = g ∗ f ∗ h`.
    fn split_around(&self, x: &Element, f: &Element) -> Option<(Element, Element)> {
        let t = self.t;
        let (Element::Hnn { pieces: xp, blocks: xb, .. }, Element::Hnn { pieces: fp, blocks: fb, .. }) = (x, f) else {
            return (x == f).then(|| (Element::identity(), Element::identity()));
        };
        let (b, c) = (&xb[0], &fb[0]);
        if b.letter != c.letter || b.sign != c.sign {
            return None;
        }
        let (head, _) = t.letter(b.letter).head(b.sign);
        let d0: Vec<i64> = b.offset.iter().zip(&c.offset).map(|(x, y)| x - y).collect();
        let fi = t.inv(f);
        let q1i = t.inv(&fp[0]);
        for delta in box_around(&d0, if d0.len() <= 2 { 2 } else { 0 }) {
            let pows: Vec<Element> = head.iter().zip(&delta).map(|(g, &e)| t.pow(g, e)).collect();
            let hd = t.product(&pows);
            let g = t.product([&xp[0], &hd, &q1i]);
            if !self.in_zero(&g) {
                continue;
            }
            let h = t.product([&fi, &t.inv(&g), x]);
            if self.in_zero(&h) {
                return Some((g, h));
            }
        }
        None
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.decompose(x).is_some()
    }

    /// Whether `x ∗ y ∈ P_Z`, by the `f_x = f_y^-1` criterion.
    pub fn product_defined(&self, x: &Element, y: &Element) -> Result<bool> {
        let t = self.t;
        let not_member = |e: &Element| TowerError::rejected("pregroup", format!("{} is not in P_Z", t.render(e)));
        let dx = self.decompose(x).ok_or_else(|| not_member(x))?;
        let dy = self.decompose(y).ok_or_else(|| not_member(y))?;
        let (PzItem::Letter { f: fx, h: h2, .. }, PzItem::Letter { g: h1, f: fy, .. }) = (dx, dy) else {
            return Ok(true);
        };
        let (ex, ey) = (&self.letters[fx], &self.letters[fy]);
        if *ex != t.inv(ey) {
            return Ok(false);
        }
        Ok(self.in_zero(&t.product([ex, &h2, &h1, &t.inv(ex)])))
    }

    /// Greedily merges adjacent items whose product stays in `P_Z`.
    pub fn reduce(&self, seq: &PSequence) -> Result<PSequence> {
        let t = self.t;
        let mut items: Vec<Element> = seq.items.iter().filter(|e| !e.is_identity()).cloned().collect();
        let mut i = 0;
        while i + 1 < items.len() {
            if self.product_defined(&items[i], &items[i + 1])? {
                let p = t.mul(&items[i], &items[i + 1]);
                items.splice(i..i + 2, (!p.is_identity()).then_some(p));
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
        Ok(PSequence { items })
    }
}

/// Integer points within `r` of `c` in the sup norm, nearest first.
fn box_around(c: &[i64], r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![c.to_vec()];
    for k in 0..c.len() {
        let mut next = Vec::new();
        for p in &out {
            for d in -r..=r {
                let mut q = p.clone();
                q[k] += d;
                next.push(q);
            }
        }
        out = next;
    }
    out.sort_by_key(|p| p.iter().zip(c).map(|(a, b)| (a - b).abs()).max().unwrap_or(0));
    out
}

pub fn pz_membership(t: &GroupTower, z: &GenSet, x: &Element) -> Result<bool> {
    Ok(Pregroup::new(t, z)?.contains(x))
}

pub fn pz_product_defined(t: &GroupTower, z: &GenSet, x: &Element, y: &Element) -> Result<bool> {
    Pregroup::new(t, z)?.product_defined(x, y)
}

pub fn reduce_psequence(t: &GroupTower, z: &GenSet, seq: &PSequence) -> Result<PSequence> {
    Pregroup::new(t, z)?.reduce(seq)
}

#[derive(Debug, Clone, Default)]
pub struct PregroupReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl PregroupReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sampled checks: `Z` is reduced, `P_Z` is closed under inversion,
/// independent reductions of one element have equal length, and λ is
/// additive over reduced sequences.
pub fn verify_pregroup(t: &GroupTower, z: &GenSet, samples: usize, seed: u64) -> PregroupReport {
    let mut rep = PregroupReport::default();
    for v in is_reduced(t, z, REDUCED_RADIUS) {
        rep.failures.push(format!("reduced-set: {v}"));
    }
    let pg = Pregroup::unchecked(t, z);
    if pg.letters.is_empty() && pg.zero.is_empty() {
        return rep;
    }
    let ball: Vec<Element> = zero_ball(t, z, 2).into_iter().map(|h| h.element).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let item = |rng: &mut ChaCha8Rng| -> Element {
        let h = &ball[rng.gen_range(0..ball.len())];
        if pg.letters.is_empty() || rng.gen_bool(0.25) {
            return h.clone();
        }
        let f = &pg.letters[rng.gen_range(0..pg.letters.len())];
        let g = &ball[rng.gen_range(0..ball.len())];
        t.product([g, f, h])
    };
    let show = |s: &[Element]| s.iter().map(|e| t.render(e)).collect::<Vec<_>>().join(", ");
    for _ in 0..samples {
        let n = rng.gen_range(1..=5);
        let seq: Vec<Element> = (0..n).map(|_| item(&mut rng)).collect();
        let g = t.product(&seq);
        rep.checked += 1;
        if let Some(x) = seq.iter().find(|x| !pg.contains(&t.inv(x))) {
            rep.failures.push(format!("inverse: {} ∉ P_Z", t.render(&t.inv(x))));
            continue;
        }
        // an independent factorization: an inserted cancelling pair
        let mut alt = seq.clone();
        let c = item(&mut rng);
        let pos = rng.gen_range(0..=alt.len());
        alt.splice(pos..pos, [c.clone(), t.inv(&c)]);
        let (r1, r2) = match (pg.reduce(&PSequence { items: seq.clone() }), pg.reduce(&PSequence { items: alt })) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                rep.failures.push(format!("membership: {e}"));
                continue;
            }
        };
        if t.product(&r1.items) != g || t.product(&r2.items) != g {
            rep.failures.push(format!("product: reduction of ({}) changed the element", show(&seq)));
        } else if r1.items.len() != r2.items.len() {
            rep.failures.push(format!("equal-length: ({}) vs ({})", show(&r1.items), show(&r2.items)));
        } else if t.lambda(&g) != r1.items.iter().map(|x| t.lambda(x)).sum::<i64>() {
            rep.failures.push(format!("lambda-additivity: ({}) for {}", show(&r1.items), t.render(&g)));
        }
    }
    rep
}

/// One stable letter of a splitting: `element^-1 · source_k · element =
/// target_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitLetter {
    pub name: String,
    pub element: Element,
    pub source: Vec<Element>,
    pub target: Vec<Element>,
}

/// `G = ⟨H, Y | y^-1 C_H(u_y) y = C_H(v_y)⟩` with `H = ⟨Z₀⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSplit {
    pub base_gens: Vec<Element>,
    pub letters: Vec<SplitLetter>,
}

impl fmt::Display for SplitLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

pub fn split_level(t: &GroupTower, z: &GenSet) -> Result<LevelSplit> {
    let pg = Pregroup::new(t, z)?;
    if t.rank() == 1 {
        return Ok(LevelSplit { base_gens: z.elements(), letters: Vec::new() });
    }
    let mut letters = Vec::new();
    for (i, id) in z.plus(t).into_iter().enumerate() {
        let y = z.element(id).clone();
        let r = t.render(&y);
        let name = match t.generator(&r) {
            Ok(g) if g == y => r,
            _ => format!("y{}", i + 1),
        };
        let source = pinch_subgroup(t, &y);
        let yi = t.inv(&y);
        let target = source.iter().map(|a| t.product([&yi, a, &y])).collect();
        letters.push(SplitLetter { name, element: y, source, target });
    }
    Ok(LevelSplit { base_gens: pg.zero, letters })
}

/// Generators of `{h ∈ G_{n-1} : y^-1 h y ∈ G_{n-1}}`.
fn pinch_subgroup(t: &GroupTower, y: &Element) -> Vec<Element> {
    let Element::Hnn { pieces, blocks, .. } = y else { return Vec::new() };
    let (head, _) = t.letter(blocks[0].letter).head(blocks[0].sign);
    let p = &pieces[0];
    let pi = t.inv(p);
    let conj: Vec<Element> = head.iter().map(|h| t.product([p, h, &pi])).collect();
    if blocks.len() == 1 {
        return conj;
    }
    let yi = t.inv(y);
    let hits: Vec<Element> = box_around(&vec![0; conj.len()], 3)
        .into_iter()
        .filter(|d| d.iter().any(|&x| x != 0))
        .map(|d| {
            let pows: Vec<Element> = conj.iter().zip(&d).map(|(g, &e)| t.pow(g, e)).collect();
            t.product(&pows)
        })
        .filter(|h| t.lambda(&t.product([&yi, h, y])) == 0)
        .collect();
    t.graded_basis(&hits)
}

impl LevelSplit {
    /// Rebuilds the splitting over `t`'s level below the top; returns the
    /// new tower and each split letter as an element of it.
    pub fn rebuild(&self, t: &GroupTower) -> Result<(GroupTower, Vec<Element>)> {
        let mut cur = t.truncate(t.rank().saturating_sub(1).max(1));
        if self.letters.is_empty() {
            return Ok((t.clone(), Vec::new()));
        }
        let mut elems = Vec::new();
        for (i, l) in self.letters.iter().enumerate() {
            if l.source.is_empty() {
                return Err(TowerError::rejected(
                    "centralizer-shape",
                    format!("{} has a trivial pinch subgroup", l.name),
                ));
            }
            let placement = if i == 0 { Placement::NewLevel } else { Placement::JoinTop };
            let a = AbelianSubgroup::new(l.source.clone());
            let b = AbelianSubgroup::new(l.target.clone());
            let ext = extend_hnn(&cur, &a, &b, &l.name, placement)?;
            cur = ext.tower.clone();
            elems.push(ext.requested_letter(&l.name)?);
        }
        // earlier letters' elements stay valid as later letters only append
        Ok((cur, elems))
    }

    /// The defining relations hold in `t` and in the rebuilt tower.
    pub fn verify(&self, t: &GroupTower) -> Result<bool> {
        let (r, elems) = self.rebuild(t)?;
        Ok(self.letters.iter().zip(&elems).all(|(l, y)| {
            let (yi, ri) = (t.inv(&l.element), r.inv(y));
            l.source
                .iter()
                .zip(&l.target)
                .all(|(a, b)| t.equals(&t.product([&yi, a, &l.element]), b) && r.equals(&r.product([&ri, a, y]), b))
        }))
    }

    pub fn to_tower_file(&self, t: &GroupTower) -> Result<TowerFile> {
        Ok(TowerFile::from_tower(&self.rebuild(t)?.0))
    }
}
