//! Sampled verification of the length-function axioms and the commutation
//! lemmas.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lambda::LambdaVec;
use crate::tower::{Element, GroupTower};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub seed: u64,
    pub samples: usize,
    /// Maximum number of stable-letter factors per sampled element.
    pub radius: usize,
    /// Maximum number of generator factors per sampled element.
    pub word_cap: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { seed: 0, samples: 1000, radius: 4, word_cap: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub g: String,
    pub f: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AXIOM g={} f={} detail={}: {}", self.g, self.f, self.axiom, self.detail)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Random products of generators as factor lists, so that related samples
/// can share prefixes.
pub struct Sampler<'a> {
    t: &'a GroupTower,
    gens: Vec<(Element, bool)>,
    rng: ChaCha8Rng,
    spec: SampleSpec,
}

impl<'a> Sampler<'a> {
    pub fn new(t: &'a GroupTower, spec: SampleSpec) -> Self {
        let gens = t.generators().into_iter().map(|g| {
            let stable = !matches!(g, Element::Word(_));
            (g, stable)
        });
        Sampler { t, gens: gens.collect(), rng: ChaCha8Rng::seed_from_u64(spec.seed), spec }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn factors(&mut self) -> Vec<Element> {
        let n = self.rng.gen_range(0..=self.spec.word_cap);
        let mut stable_left = self.spec.radius;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let (g, stable) = self.gens[self.rng.gen_range(0..self.gens.len())].clone();
            if stable {
                if stable_left == 0 {
                    continue;
                }
                stable_left -= 1;
            }
            out.push(if self.rng.gen_bool(0.5) { g } else { self.t.inv(&g) });
        }
        out
    }

    pub fn element(&mut self) -> Element {
        let f = self.factors();
        self.t.product(&f)
    }

    /// `prefix of base` · fresh tail.
    pub fn related(&mut self, base: &[Element]) -> Element {
        let k = self.rng.gen_range(0..=base.len());
        let tail = self.factors();
        let t = self.t;
        t.mul(&t.product(&base[..k]), &t.product(&tail))
    }
}

/// `c(g, f)`; `Err` carries the doubled value when it is not divisible.
pub fn gromov_product(t: &GroupTower, g: &Element, f: &Element) -> Result<LambdaVec, LambdaVec> {
    let d = t.gromov2(g, f);
    if d.coords().iter().any(|c| c % 2 != 0) {
        return Err(d);
    }
    Ok(LambdaVec::from_coords(d.coords().iter().map(|c| c / 2).collect()))
}

pub fn check_axioms(t: &GroupTower, spec: SampleSpec) -> Report {
    let mut s = Sampler::new(t, spec);
    let mut rep = Report::default();
    let zero = LambdaVec::zero(t.rank());
    if t.length(&Element::identity()) != zero {
        rep.violations.push(violation(t, "L1", &Element::identity(), &Element::identity(), "l(ε) ≠ 0".into()));
    }
    for _ in 0..spec.samples {
        let gf = s.factors();
        let g = t.product(&gf);
        let f = s.related(&gf);
        let h = s.related(&gf);
        check_triple(t, &g, &f, &h, &mut rep);
        rep.checked += 1;
    }
    rep
}

pub fn check_triple(t: &GroupTower, g: &Element, f: &Element, h: &Element, rep: &mut Report) {
    let zero = LambdaVec::zero(t.rank());
    let lg = t.length(g);
    let mut bad = |axiom: &'static str, detail: String| rep.violations.push(violation(t, axiom, g, f, detail));
    if lg < zero {
        bad("L1", format!("negative length {lg}"));
    }
    if t.length(&t.inv(g)) != lg {
        bad("L2", "l(g) ≠ l(g^-1)".into());
    }
    let (cgf, cgh, cfh) = (t.gromov2(g, f), t.gromov2(g, h), t.gromov2(f, h));
    if cgf > cgh && cgh != cfh {
        bad("L3", format!("2c(g,f)={cgf} > 2c(g,h)={cgh} but 2c(f,h)={cfh}"));
    }
    if cgf.coords().iter().any(|c| c % 2 != 0) {
        bad("L4", format!("2c(g,f)={cgf} is not divisible by 2"));
    }
    if !g.is_identity() && t.length(&t.mul(g, g)) <= lg {
        bad("L5", "l(g²) ≤ l(g)".into());
    }
    let u = t.com(g, f);
    let lu = t.length(&u);
    let ui = t.inv(&u);
    let (g1, f1) = (t.mul(&ui, g), t.mul(&ui, f));
    if lu.scale(2) != cgf {
        bad("L6", format!("l(com)={lu} but c(g,f)·2={cgf}"));
    }
    if &lu + &t.length(&g1) != lg || &lu + &t.length(&f1) != t.length(f) {
        bad("L6", "com is not an initial segment".into());
    }
    if !t.com(&g1, &f1).is_identity() {
        bad("L6", "remainders share a first letter".into());
    }
}

fn violation(t: &GroupTower, axiom: &'static str, g: &Element, f: &Element, detail: String) -> Violation {
    Violation { axiom, g: t.render(g), f: t.render(f), detail }
}

/// Commutation implications (root-or-free, common-conjugator, head-power,
/// head-commute, head-conjugate) on sampled instances whose hypotheses hold.
pub fn commutation_suite(t: &GroupTower, spec: SampleSpec) -> Report {
    let mut s = Sampler::new(t, spec);
    let mut rep = Report::default();
    for _ in 0..spec.samples {
        let g = s.element();
        if g.is_identity() {
            continue;
        }
        let (_, f) = t.cyclic_decompose(&g);
        // root-or-free: h either related to f's root or independent.
        let h = if s.rng().gen_bool(0.5) {
            let (r, _) = t.root(&f).expect("nonidentity core");
            t.pow(&r, s.rng().gen_range(1..=3))
        } else {
            t.cyclic_decompose(&s.element()).1
        };
        if !h.is_identity() {
            let bound = &t.length(&f) + &t.length(&h);
            'ls: for m in 1..=4 {
                for n in 1..=4 {
                    let c2 = t.gromov2(&t.pow(&f, m), &t.pow(&h, n));
                    if c2 >= bound.scale(2) {
                        if !t.commutes(&f, &h) {
                            rep.violations.push(violation(t, "root-or-free", &f, &h, format!("m={m} n={n}")));
                        }
                        break 'ls;
                    }
                }
            }
        }
        // common-conjugator on a commuting pair from the centralizer.
        let cent = t.centralizer(&g).expect("nonidentity");
        let elems = t.subgroup_elements(&cent);
        let pick = &elems[s.rng().gen_range(0..elems.len())];
        let g2 = t.mul(&t.pow(pick, s.rng().gen_range(1..=2)), &g);
        if !g2.is_identity() {
            let (c1, _) = t.cyclic_decompose(&g);
            let (c2, _) = t.cyclic_decompose(&g2);
            if !t.commutes(&g, &g2) || c1 != c2 {
                rep.violations.push(violation(t, "common-conjugator", &g, &g2, "conjugating parts differ".into()));
            }
        }
        head_lemmas(t, &mut s, &mut rep);
        rep.checked += 1;
    }
    rep
}

fn head_lemmas(t: &GroupTower, s: &mut Sampler, rep: &mut Report) {
    if t.letters().is_empty() {
        return;
    }
    let li = s.rng().gen_range(0..t.letters().len());
    let sign = if s.rng().gen_bool(0.5) { 1i8 } else { -1 };
    let letter = t.letter(li);
    let (head, _) = letter.head(sign);
    let lower = GroupTower::truncate(t, letter.level - 1);
    let mut ls = Sampler::new(&lower, SampleSpec { seed: s.rng().gen(), samples: 1, radius: 2, word_cap: 4 });
    let st = t.stable_element(li, sign);
    let f = t.mul(&st, &ls.element());
    let hf = t.height(&f);
    let k = s.rng().gen_range(0..head.len());
    let h1 = t.pow(&head[k], s.rng().gen_range(1..=3) * if s.rng().gen_bool(0.5) { 1 } else { -1 });
    let fi = t.inv(&f);
    let conj = |x: &Element| t.product([&fi, x, &f]);
    // head-power
    if t.is_cyclically_reduced(&h1) && hf > t.height(&h1) && t.height(&conj(&h1)) < hf {
        let lf = t.length(&f);
        for n in 1..=4i64 {
            let ok = [n, -n].iter().any(|&e| {
                let rest = t.mul(&t.pow(&h1, -e), &f);
                t.length(&rest) == &lf - &t.length(&h1).scale(n)
            });
            if !ok {
                rep.violations.push(violation(t, "head-power", &f, &h1, format!("n={n}")));
                break;
            }
        }
    }
    // head-commute and head-conjugate with a second element of the head subgroup
    let h2 = t.pow(&head[s.rng().gen_range(0..head.len())], s.rng().gen_range(-3..=3));
    if t.height(&h1) < hf
        && t.height(&h2) < hf
        && t.height(&conj(&h1)) < hf
        && t.height(&conj(&h2)) < hf
        && !t.commutes(&h1, &h2)
    {
        rep.violations.push(violation(t, "head-commute", &h1, &h2, "[h1,h2] ≠ ε".into()));
    }
    if t.is_cyclically_reduced(&f) && t.height(&h1) < hf && t.height(&conj(&h1)) < hf {
        let hh = t.pow(&h1, 2);
        if t.height(&hh) < hf && t.commutes(&h1, &hh) && t.height(&conj(&hh)) >= hf {
            rep.violations.push(violation(t, "head-conjugate", &f, &hh, "conjugate rises to ht(f)".into()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::factory::t1;

    #[test]
    fn gromov_examples() {
        let f = GroupTower::free(&["a", "b", "c"]).unwrap();
        let (x, y) = (parse(&f, "a*b").unwrap(), parse(&f, "a*c").unwrap());
        assert_eq!(gromov_product(&f, &x, &y).unwrap().coords(), &[1]);
        assert_eq!(gromov_product(&f, &x, &x).unwrap(), f.length(&x));
        let t = t1();
        let (x, y) = (parse(&t, "z*a").unwrap(), parse(&t, "z*b").unwrap());
        assert_eq!(gromov_product(&t, &x, &y).unwrap().coords(), &[0, 1]);
    }

    #[test]
    fn free_group_passes() {
        let f = GroupTower::free(&["a", "b"]).unwrap();
        let rep = check_axioms(&f, SampleSpec { samples: 300, ..Default::default() });
        assert!(rep.ok(), "{:?}", rep.violations.first());
    }

    #[test]
    fn t1_lemma_one_instance() {
        let t = t1();
        let (z, a) = (parse(&t, "z").unwrap(), parse(&t, "a").unwrap());
        let a2 = t.pow(&a, 2);
        let zi = t.inv(&z);
        assert!(t.height(&t.product([&zi, &a, &z])) < t.height(&z));
        assert!(t.commutator(&a, &a2).is_identity());
    }

    #[test]
    fn same_seed_same_report() {
        let t = t1();
        let spec = SampleSpec { samples: 20, seed: 7, ..Default::default() };
        let mut a = Sampler::new(&t, spec);
        let mut b = Sampler::new(&t, spec);
        for _ in 0..20 {
            assert_eq!(a.element(), b.element());
        }
    }
}
