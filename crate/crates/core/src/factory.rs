//! Example towers: surfaces, free abelian groups, free products.

use std::collections::HashSet;

use crate::expr::parse;
use crate::tower::{GroupTower, LetterSpec, Result, TowerError};
use crate::towerfile::{LevelFile, TowerFile};
use crate::words::FreeWord;

fn build(alphabet: &[String], letters: &[(&str, usize, Vec<String>, Vec<String>)]) -> Result<GroupTower> {
    let mut t = GroupTower::free(alphabet)?;
    for (name, level, src, tgt) in letters {
        let source = src.iter().map(|s| parse(&t, s)).collect::<Result<_>>()?;
        let target = tgt.iter().map(|s| parse(&t, s)).collect::<Result<_>>()?;
        t = t.add_letter(LetterSpec { name: name.to_string(), level: *level, source, target })?;
    }
    Ok(t)
}

fn names(prefix: &str, range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// `⟨a, b, z | z^-1 a z = b⟩`.
pub fn t1() -> GroupTower {
    build(&["a".into(), "b".into()], &[("z", 2, vec!["a".into()], vec!["b".into()])]).expect("T1 is valid")
}

/// `⟨a, z | z^-1 a z = a⟩ ≅ Z²`.
pub fn t_ab() -> GroupTower {
    free_abelian(2).expect("Z² is valid")
}

/// `⟨x_2, …, x_2n, x_1 | x_1 (x_2⋯x_2n) x_1^-1 = x_2n⋯x_2⟩`.
pub fn surface_orientable(n: usize) -> Result<GroupTower> {
    if n < 1 {
        return Err(TowerError::rejected("surface", "genus must be at least 1"));
    }
    let alphabet = names("x", 2..=2 * n);
    let fwd = alphabet.join("*");
    let rev: Vec<&str> = alphabet.iter().rev().map(String::as_str).collect();
    build(&alphabet, &[("x1", 2, vec![rev.join("*")], vec![fwd])])
}

/// `⟨x_2, …, x_n, x_1 | x_1 (x_2⋯x_n) x_1^-1 = x_n^-1 x_{n-1}⋯x_2⟩`, n ≥ 3.
pub fn surface_nonorientable(n: usize) -> Result<GroupTower> {
    if n < 3 {
        return Err(TowerError::rejected("surface", "nonorientable genus must be at least 3"));
    }
    let alphabet = names("x", 2..=n);
    let fwd = alphabet.join("*");
    let mut src = vec![format!("{}^-1", alphabet[n - 2])];
    src.extend(alphabet[..n - 2].iter().rev().cloned());
    build(&alphabet, &[("x1", 2, vec![fwd], vec![src.join("*")])])
}

/// The relator of [`surface_orientable`], which evaluates to ε.
pub fn orientable_relator(n: usize) -> String {
    let gens = names("x", 2..=2 * n);
    let rev: Vec<&str> = gens.iter().rev().map(String::as_str).collect();
    format!("x1*({})*x1^-1*({})^-1", gens.join("*"), rev.join("*"))
}

/// The relator of [`surface_nonorientable`].
pub fn nonorientable_relator(n: usize) -> String {
    let gens = names("x", 2..=n);
    let mut rhs = vec![format!("{}^-1", gens[n - 2])];
    rhs.extend(gens[..n - 2].iter().rev().cloned());
    format!("x1^-1*({})*x1*({})^-1", gens.join("*"), rhs.join("*"))
}

/// Z^n: letters `z` (level 2), `z3`, …, `zn`, each centralizing everything
/// below it.
pub fn free_abelian(n: usize) -> Result<GroupTower> {
    if n < 1 {
        return Err(TowerError::rejected("abelian", "rank must be at least 1"));
    }
    let mut t = GroupTower::free(&["a"])?;
    let mut below = vec!["a".to_string()];
    for k in 2..=n {
        let name = if k == 2 { "z".to_string() } else { format!("z{k}") };
        let gens = below.iter().map(|s| parse(&t, s)).collect::<Result<Vec<_>>>()?;
        t = t.add_letter(LetterSpec { name: name.clone(), level: k, source: gens.clone(), target: gens })?;
        below.push(name);
    }
    Ok(t)
}

/// Free product; names of the second factor are suffixed on collision.
pub fn free_product(t1: &GroupTower, t2: &GroupTower) -> Result<GroupTower> {
    let f1 = TowerFile::from_tower(t1);
    let f2 = TowerFile::from_tower(t2);
    let mut taken: HashSet<String> = f1.alphabet.iter().cloned().collect();
    taken.extend(t1.letters().iter().map(|l| l.name.clone()));
    let mut rename = std::collections::HashMap::new();
    let old2: Vec<String> = f2.alphabet.iter().cloned().chain(t2.letters().iter().map(|l| l.name.clone())).collect();
    for n in old2 {
        let mut fresh = n.clone();
        let mut k = 2;
        while taken.contains(&fresh) {
            fresh = format!("{n}_{k}");
            k += 1;
        }
        taken.insert(fresh.clone());
        rename.insert(n, fresh);
    }
    let ren = |s: &str| rename_idents(s, &rename);
    let mut out = f1.clone();
    out.alphabet.extend(f2.alphabet.iter().map(|a| rename[a].clone()));
    for (i, lvl) in f2.levels.iter().enumerate() {
        if out.levels.len() <= i {
            out.levels.push(LevelFile { letters: Vec::new() });
        }
        for l in &lvl.letters {
            let mut l = l.clone();
            l.name = rename[&l.name].clone();
            l.source_gens = l.source_gens.iter().map(|s| ren(s)).collect();
            l.target_gens = l.target_gens.iter().map(|s| ren(s)).collect();
            out.levels[i].letters.push(l);
        }
    }
    out.build()
}

fn rename_idents(expr: &str, map: &std::collections::HashMap<String, String>) -> String {
    let mut out = String::new();
    let mut ident = String::new();
    let flush = |ident: &mut String, out: &mut String| {
        if !ident.is_empty() {
            out.push_str(map.get(ident.as_str()).map_or(ident.as_str(), |s| s.as_str()));
            ident.clear();
        }
    };
    for c in expr.chars() {
        let continues = c.is_ascii_alphanumeric() || c == '_';
        if continues && (!ident.is_empty() || c.is_ascii_alphabetic() || c == '_') {
            ident.push(c);
        } else {
            flush(&mut ident, &mut out);
            out.push(c);
        }
    }
    flush(&mut ident, &mut out);
    out
}

/// Distinct elements of `U^{±1}` have distinct initial letters.
pub fn check_regular_basis(u: &[FreeWord]) -> bool {
    let mut elems: Vec<FreeWord> = u.iter().flat_map(|w| [w.clone(), w.inverse()]).filter(|w| !w.is_empty()).collect();
    elems.sort();
    elems.dedup();
    let firsts: HashSet<_> = elems.iter().map(|w| w.letters()[0]).collect();
    firsts.len() == elems.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surfaces_build_and_relators_vanish() {
        for n in 1..=3 {
            let t = surface_orientable(n).unwrap();
            assert!(parse(&t, &orientable_relator(n)).unwrap().is_identity(), "genus {n}");
        }
        for n in 3..=5 {
            let t = surface_nonorientable(n).unwrap();
            assert!(parse(&t, &nonorientable_relator(n)).unwrap().is_identity(), "genus {n}");
        }
        assert!(surface_nonorientable(2).is_err());
        assert!(surface_orientable(0).is_err());
    }

    #[test]
    fn free_abelian_commutes() {
        let t = free_abelian(3).unwrap();
        let g = t.generators();
        for x in &g {
            for y in &g {
                assert!(t.commutes(x, y));
            }
        }
        assert_eq!(free_abelian(1).unwrap().rank(), 1);
    }

    #[test]
    fn free_products() {
        let fa = GroupTower::free(&["a"]).unwrap();
        let fb = GroupTower::free(&["b"]).unwrap();
        assert_eq!(free_product(&fa, &fb).unwrap().alphabet(), &["a", "b"]);
        let t = free_product(&t1(), &GroupTower::free(&["c"]).unwrap()).unwrap();
        assert_eq!(t.alphabet(), &["a", "b", "c"]);
        let w = parse(&t, "a*z*c").unwrap();
        assert_eq!(t.length(&w).coords(), &[2, 1]);
        let tt = free_product(&t_ab(), &t_ab()).unwrap();
        assert_eq!(tt.rank(), 2);
        let (a, a2) = (parse(&tt, "a").unwrap(), parse(&tt, "a_2").unwrap());
        let (z, z2) = (parse(&tt, "z").unwrap(), parse(&tt, "z_2").unwrap());
        assert!(tt.commutes(&a, &z) && tt.commutes(&a2, &z2));
        assert!(!tt.commutes(&a, &z2));
    }

    #[test]
    fn regular_basis() {
        let t = GroupTower::free(&["a", "b", "c"]).unwrap();
        let w = |s: &str| parse(&t, s).unwrap().as_word().unwrap().clone();
        // a^-1 and a^-1*b^-1 share an initial letter
        assert!(!check_regular_basis(&[w("a"), w("b*a")]));
        assert!(check_regular_basis(&[w("a"), w("b")]));
        assert!(!check_regular_basis(&[w("a*b"), w("b*a^-1")]));
        assert!(!check_regular_basis(&[w("a*b"), w("c*b")]));
        assert!(check_regular_basis(&[w("a^2"), w("b*c")]));
        assert!(!check_regular_basis(&[w("a*b"), w("a*c")]));
        assert!(check_regular_basis(&[w("a")]));
    }
}
