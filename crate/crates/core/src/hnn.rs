//! HNN extensions over centralizers: admissibility, attachment, extension.

use crate::tower::{AbelianSubgroup, Element, GroupTower, LetterSpec, Result, Side, TowerError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub u_cyclically_reduced: bool,
    pub v_cyclically_reduced: bool,
    pub u_not_proper_power: bool,
    pub v_not_proper_power: bool,
    pub equal_length: bool,
    pub not_conjugate_to_inverse: bool,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.failure().is_none()
    }

    /// Name of the first failing condition.
    pub fn failure(&self) -> Option<&'static str> {
        if !(self.u_cyclically_reduced && self.v_cyclically_reduced) {
            Some("not-cyclically-reduced")
        } else if !(self.u_not_proper_power && self.v_not_proper_power) {
            Some("proper-power")
        } else if !self.equal_length {
            Some("length-mismatch")
        } else if !self.not_conjugate_to_inverse {
            Some("conjugate-to-inverse")
        } else {
            None
        }
    }
}

pub fn check_admissible(t: &GroupTower, u: &Element, v: &Element) -> AdmissibilityReport {
    let cr = |x: &Element| !x.is_identity() && t.is_cyclically_reduced(x);
    let primitive = |x: &Element| cr(x) && matches!(t.root(x), Ok((_, 1)));
    AdmissibilityReport {
        u_cyclically_reduced: cr(u),
        v_cyclically_reduced: cr(v),
        u_not_proper_power: primitive(u),
        v_not_proper_power: primitive(v),
        equal_length: t.length(u) == t.length(v),
        not_conjugate_to_inverse: !t.is_conjugate(u, &t.inv(v)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachmentRecord {
    pub letter: String,
    pub sign: i8,
    pub side: Side,
    pub centralizer: AbelianSubgroup,
    pub witness_generator: Element,
}

/// Stable letters (with sign) attached to `C` on `side` with respect to its
/// maximal generator.
pub fn find_attached(t: &GroupTower, c: &AbelianSubgroup, side: Side) -> Vec<AttachmentRecord> {
    let Some(top) = t.subgroup_elements(c).pop() else { return Vec::new() };
    t.attached(&top, side)
        .into_iter()
        .map(|(l, sign)| AttachmentRecord {
            letter: t.letter(l).name.clone(),
            sign,
            side,
            centralizer: c.clone(),
            witness_generator: top.clone(),
        })
        .collect()
}

/// Walks `D_{p+1} = w^-1 D_p w` along attached letters until no letter is
/// attached on `side`. Returns the new generators and the accumulated
/// conjugator `x` (new = x^-1 · old · x).
pub fn unattached_conjugate(t: &GroupTower, gens: &[Element], side: Side) -> Result<(Vec<Element>, Element)> {
    let mut gens = gens.to_vec();
    let mut conj = Element::identity();
    let mut seen = vec![gens.last().cloned().ok_or(TowerError::Identity)?];
    loop {
        let u = gens.last().unwrap().clone();
        let Some(&(l, s)) = t.attached(&u, side).first() else {
            return Ok((gens, conj));
        };
        let w = t.generator(&t.letter(l).name)?;
        let w = t.pow(&w, s as i64);
        let wi = t.inv(&w);
        gens = gens.iter().map(|g| t.product([&wi, g, &w])).collect();
        conj = t.mul(&conj, &w);
        let nu = gens.last().unwrap().clone();
        if seen.contains(&nu) {
            return Err(TowerError::rejected("attached-cycle", "attachment walk revisits a centralizer"));
        }
        seen.push(nu);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Placement {
    #[default]
    NewLevel,
    JoinTop,
}

#[derive(Debug, Clone)]
pub struct Extension {
    pub tower: GroupTower,
    /// The stored letter `s'` relates to the requested `s` by
    /// `s = conj_source · s' · conj_target^-1`.
    pub conj_source: Element,
    pub conj_target: Element,
}

impl Extension {
    /// The requested letter `s` (with `s^-1 A s = B` for the original A, B)
    /// as an element of the new tower.
    pub fn requested_letter(&self, name: &str) -> Result<Element> {
        let t = &self.tower;
        let s = t.generator(name)?;
        Ok(t.product([&self.conj_source, &s, &t.inv(&self.conj_target)]))
    }
}

/// `⟨H, s | s^-1 A s = B⟩` with `φ(A.gens[k]) = B.gens[k]`.
pub fn extend_hnn(
    t: &GroupTower,
    a: &AbelianSubgroup,
    b: &AbelianSubgroup,
    name: &str,
    placement: Placement,
) -> Result<Extension> {
    let level = match placement {
        Placement::NewLevel => t.rank() + 1,
        Placement::JoinTop => match t.letters().last() {
            Some(l) => l.level,
            None => return Err(TowerError::rejected("level", "no stable-letter level to join")),
        },
    };
    let src = t.subgroup_elements(a);
    let tgt = t.subgroup_elements(b);
    if src.is_empty() || src.len() != tgt.len() {
        return Err(TowerError::rejected("centralizer-shape", "source and target must have equal nonzero rank"));
    }
    let (src, c1) = cyclic_rep(t, &src);
    let (tgt, d1) = cyclic_rep(t, &tgt);
    let (src, c2) = unattached_conjugate(t, &src, Side::Right)?;
    let (tgt, d2) = unattached_conjugate(t, &tgt, Side::Left)?;
    let tower = t.add_letter(LetterSpec { name: name.to_string(), level, source: src, target: tgt })?;
    Ok(Extension { conj_source: tower.mul(&c1, &c2), conj_target: tower.mul(&d1, &d2), tower })
}

/// Conjugates the list so its top generator is cyclically reduced:
/// returns `x^-1 · gens · x` and `x`.
fn cyclic_rep(t: &GroupTower, gens: &[Element]) -> (Vec<Element>, Element) {
    let (c, _) = t.cyclic_decompose(gens.last().unwrap());
    let x = t.inv(&c);
    let out = gens.iter().map(|g| t.product([&c, g, &x])).collect();
    (out, x)
}

/// `s^-1 · source_k · s = target_k` for every generator.
pub fn verify_phi_conjugation(t: &GroupTower, letter: &str) -> bool {
    let Some(idx) = t.letters().iter().position(|l| l.name == letter) else { return false };
    let Ok(s) = t.generator(letter) else { return false };
    let si = t.inv(&s);
    let l = t.letter(idx);
    l.source.iter().zip(&l.target).all(|(h, k)| t.equals(&t.product([&si, h, &s]), k))
}
