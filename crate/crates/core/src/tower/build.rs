//! Adding stable letters with full validation.

use super::{com::Side, Element, GroupTower, Result, StableLetter, TowerError};

/// A stable letter `s` with `s^-1 · source_k · s = target_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterSpec {
    pub name: String,
    pub level: usize,
    pub source: Vec<Element>,
    pub target: Vec<Element>,
}

pub(crate) fn valid_ident(s: &str) -> bool {
    crate::expr::is_ident(s) && s != "_"
}

const CONJUGATE_CENTRALIZERS: &str = "conjugate-centralizers";
pub const CLASH: &str = "orientation-clash: th:main2 (5)";

impl GroupTower {
    /// Returns a new tower with the letter appended. The letter's level must
    /// be the current top level (≥ 2) or one above it.
    pub fn add_letter(&self, spec: LetterSpec) -> Result<GroupTower> {
        let LetterSpec { name, level, source, target } = spec;
        if !valid_ident(&name) || self.lookup(&name).is_some() {
            return Err(TowerError::BadName(name));
        }
        let top = self.letters.last().map_or(1, |l| l.level);
        if level < 2 || level < top || level > self.rank + 1 {
            return Err(TowerError::rejected(
                "level",
                format!("letter `{name}` at level {level}; allowed {}..={}", top.max(2), self.rank + 1),
            ));
        }
        if source.is_empty() || source.len() != target.len() {
            return Err(TowerError::rejected(
                "centralizer-shape",
                "source and target generator lists must be nonempty and of equal size",
            ));
        }
        // Lengths are computed in the (possibly widened) new rank.
        let mut base = self.clone();
        base.rank = self.rank.max(level);
        base.check_graded(&source, &target, level)?;
        let u = source.last().unwrap();
        let v = target.last().unwrap();
        let report = crate::hnn::check_admissible(&base, u, v);
        if let Some(flag) = report.failure() {
            return Err(TowerError::rejected(format!("admissible-pair: {flag}"), base.pair_text(u, v)));
        }
        let src_orient = base.orientations(&source, u, Side::Left)?;
        let tgt_orient = base.orientations(&target, v, Side::Right)?;
        if src_orient != tgt_orient {
            return Err(TowerError::rejected("orientation", "φ does not preserve head/tail orientation"));
        }
        // s and s^-1 must begin differently, otherwise s·s cancels inside the periods.
        let hp = base.pow(u, 2 * *src_orient.last().unwrap() as i64);
        let hm = base.pow(v, -2 * *tgt_orient.last().unwrap() as i64);
        if !base.com(&hp, &hm).is_identity() {
            return Err(TowerError::rejected(CLASH, format!("heads of {name} and {name}^-1 overlap")));
        }
        if let Some((l, s)) = base.attached(u, Side::Right).first() {
            return Err(TowerError::rejected(
                "attached",
                format!("source centralizer has a right-attached letter {}", base.signed_name(*l, *s)),
            ));
        }
        if let Some((l, s)) = base.attached(v, Side::Left).first() {
            return Err(TowerError::rejected(
                "attached",
                format!("target centralizer has a left-attached letter {}", base.signed_name(*l, *s)),
            ));
        }
        let mut out = base;
        out.letters.push(StableLetter { name, level, source, target, src_orient, tgt_orient });
        out.check_level(level)?;
        Ok(out)
    }

    pub(crate) fn signed_name(&self, l: usize, s: i8) -> String {
        let n = &self.letters[l].name;
        if s > 0 {
            n.clone()
        } else {
            format!("{n}^-1")
        }
    }

    fn pair_text(&self, u: &Element, v: &Element) -> String {
        format!("u={} v={}", self.render(u), self.render(v))
    }

    /// Height grading, equal lengths, cyclic reduction and commutation of each list.
    fn check_graded(&self, source: &[Element], target: &[Element], level: usize) -> Result<()> {
        for list in [source, target] {
            for g in list {
                if g.is_identity() || !self.is_cyclically_reduced(g) {
                    return Err(TowerError::rejected(
                        "cyclically-reduced",
                        format!("generator {} is trivial or not cyclically reduced", self.render(g)),
                    ));
                }
                if g.level() >= level {
                    return Err(TowerError::rejected(
                        "graded-heights",
                        format!("generator {} does not lie below level {level}", self.render(g)),
                    ));
                }
            }
            for w in list.windows(2) {
                if self.height(&w[0]) >= self.height(&w[1]) {
                    return Err(TowerError::rejected("graded-heights", "generator heights must strictly increase"));
                }
            }
            for (i, a) in list.iter().enumerate() {
                for b in &list[i + 1..] {
                    if !self.commutes(a, b) {
                        return Err(TowerError::rejected("abelian", "centralizer generators do not commute"));
                    }
                }
            }
        }
        for (a, b) in source.iter().zip(target) {
            if self.length(a) != self.length(b) {
                let cond = if std::ptr::eq(a, source.last().unwrap()) {
                    "admissible-pair: length-mismatch"
                } else {
                    "graded-lengths: length-mismatch"
                };
                return Err(TowerError::rejected(
                    cond,
                    format!("|{}| = {} but |{}| = {}", self.render(a), self.length(a), self.render(b), self.length(b)),
                ));
            }
        }
        Ok(())
    }

    /// Orientation of each generator relative to the period `p`: `+1` if it
    /// is an initial (Left) or terminal (Right) segment of `p^2`.
    fn orientations(&self, gens: &[Element], p: &Element, side: Side) -> Result<Vec<i8>> {
        let p2 = self.pow(p, 2);
        let lp = self.length(&p2);
        gens.iter()
            .map(|g| {
                if g == p {
                    return Ok(1);
                }
                let lg = self.length(g);
                for o in [1i8, -1] {
                    let go = self.pow(g, -(o as i64));
                    let rest = match side {
                        Side::Left => self.mul(&go, &p2),
                        Side::Right => self.mul(&p2, &go),
                    };
                    if self.length(&rest) == &lp - &lg {
                        return Ok(o);
                    }
                }
                Err(TowerError::rejected(
                    "orientation",
                    format!("{} is not a segment of the period {}", self.render(g), self.render(p)),
                ))
            })
            .collect()
    }

    /// Signed stable letters `w` with `ht(w^-1 c w) = ht(c)` and `c ∗ w`
    /// (Right) or `c^-1 ∗ w` (Left) cancellation-free.
    pub fn attached(&self, c: &Element, side: Side) -> Vec<(usize, i8)> {
        let hc = self.height(c);
        let cs = match side {
            Side::Right => c.clone(),
            Side::Left => self.inv(c),
        };
        let lc = self.length(c);
        let mut out = Vec::new();
        for (li, l) in self.letters.iter().enumerate() {
            if l.level <= hc {
                continue;
            }
            for sign in [1i8, -1] {
                let w = self.stable_element(li, sign);
                let conj = self.product([&self.inv(&w), c, &w]);
                if self.height(&conj) != hc {
                    continue;
                }
                if self.length(&self.mul(&cs, &w)) == &lc + &self.length(&w) {
                    out.push((li, sign));
                }
            }
        }
        out
    }

    fn subgroups_equal(&self, a: &[Element], b: &[Element]) -> bool {
        a.len() == b.len()
            && a.iter().all(|x| self.abelian_exponents(x, b).is_some())
            && b.iter().all(|x| self.abelian_exponents(x, a).is_some())
    }

    /// Centralizer distinctness, reuse limits and head clashes on one level.
    fn check_level(&self, level: usize) -> Result<()> {
        let here: Vec<(usize, &StableLetter)> = self.letters_at(level).collect();
        let mut cents: Vec<&[Element]> = Vec::new();
        for (_, l) in &here {
            cents.push(&l.source);
            cents.push(&l.target);
        }
        for i in 0..cents.len() {
            let mut count = 0;
            for j in 0..cents.len() {
                let same = self.subgroups_equal(cents[i], cents[j]);
                if same {
                    count += 1;
                } else if i < j {
                    let (a, b) = (cents[i].last().unwrap(), cents[j].last().unwrap());
                    if self.is_conjugate(a, b) || self.is_conjugate(a, &self.inv(b)) {
                        return Err(TowerError::rejected(
                            CONJUGATE_CENTRALIZERS,
                            format!("conjugate but unequal centralizers ⟨{}⟩, ⟨{}⟩", self.render(a), self.render(b)),
                        ));
                    }
                }
            }
            if count > 2 {
                return Err(TowerError::rejected(CLASH, "a centralizer is used more than twice at one level"));
            }
        }
        let mut heads: Vec<(Element, String)> = Vec::new();
        for (li, _) in &here {
            for sign in [1i8, -1] {
                let p = self.head_period(*li, sign);
                let name = self.signed_name(*li, sign);
                if let Some((_, other)) = heads.iter().find(|(q, _)| *q == p) {
                    return Err(TowerError::rejected(
                        CLASH,
                        format!("{other} and {name} both begin with positive powers of {}", self.render(&p)),
                    ));
                }
                heads.push((p, name));
            }
        }
        Ok(())
    }
}
