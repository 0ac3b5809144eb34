//! Freely reduced words over the base alphabet.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("root of the empty word")]
    EmptyRoot,
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
}

/// A letter `x` or `x^-1`; `sym` indexes the tower alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub sym: u32,
    pub inv: bool,
}

impl Letter {
    pub fn new(sym: u32, inv: bool) -> Self {
        Letter { sym, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { sym: self.sym, inv: !self.inv }
    }
}

/// Freely reduced word. The constructor enforces reduction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn letter(sym: u32, inv: bool) -> Self {
        FreeWord { letters: vec![Letter::new(sym, inv)] }
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in it {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = self.letters.iter().rev().zip(&other.letters).take_while(|(a, b)| a.inverse() == **b).count();
        let mut letters = self.letters[..self.len() - k].to_vec();
        letters.extend_from_slice(&other.letters[k..]);
        FreeWord { letters }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let (c, core) = base.cyclic_decompose();
        let n = k.unsigned_abs() as usize;
        let mut letters = c.inverse().letters;
        for _ in 0..n {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend_from_slice(&c.letters);
        if n == 0 {
            return FreeWord::identity();
        }
        FreeWord::from_letters(letters)
    }

    /// Longest common prefix.
    pub fn com(&self, other: &Self) -> Self {
        let k = self.letters.iter().zip(&other.letters).take_while(|(a, b)| a == b).count();
        FreeWord { letters: self.letters[..k].to_vec() }
    }

    pub fn prefix(&self, k: usize) -> Self {
        FreeWord { letters: self.letters[..k].to_vec() }
    }

    pub fn suffix_from(&self, k: usize) -> Self {
        FreeWord { letters: self.letters[k..].to_vec() }
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(a), Some(b)) => self.len() == 1 || *a != b.inverse(),
            _ => true,
        }
    }

    /// `self = c^-1 ∘ core ∘ c` with `core` cyclically reduced.
    pub fn cyclic_decompose(&self) -> (Self, Self) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let c = FreeWord { letters: self.letters[n - k..].to_vec() };
        let core = FreeWord { letters: self.letters[k..n - k].to_vec() };
        (c, core)
    }

    /// Primitive root of a nonempty cyclically reduced word.
    pub fn root(&self) -> Result<(Self, i64), WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyRoot);
        }
        if !self.is_cyclically_reduced() {
            return Err(WordError::NotCyclicallyReduced);
        }
        let n = self.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.letters[i] == self.letters[i - d]) {
                return Ok((self.prefix(d), (n / d) as i64));
            }
        }
        unreachable!()
    }

    pub fn is_conjugate(&self, other: &Self) -> bool {
        let a = self.cyclic_decompose().1;
        let b = other.cyclic_decompose().1;
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let doubled: Vec<Letter> = a.letters.iter().chain(&a.letters).copied().collect();
        doubled.windows(b.len()).any(|w| w == b.letters.as_slice())
    }

    /// Cyclic rotations `x^-1 w x` of a cyclically reduced word, with the conjugator `x`.
    pub fn rotations(&self) -> Vec<(Self, Self)> {
        (0..self.len().max(1))
            .map(|k| {
                let x = self.prefix(k.min(self.len()));
                (x.inverse().mul(self).mul(&x), x)
            })
            .collect()
    }

    /// Renders in the expression grammar, grouping runs into powers.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.len() && self.letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * if l.inv { -1 } else { 1 };
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&names[l.sym as usize]);
            if e != 1 {
                let _ = write!(out, "^{e}");
            }
            i = j;
        }
        out
    }
}

/// Folded subgroup graph; decides membership in a finitely generated
/// subgroup of a free group exactly.
#[derive(Debug, Clone)]
pub struct SubgroupGraph {
    edges: Vec<BTreeMap<(u32, bool), usize>>,
}

impl SubgroupGraph {
    pub fn new(gens: &[FreeWord]) -> Self {
        let mut raw: Vec<(usize, Letter, usize)> = Vec::new();
        let mut nv = 1;
        for g in gens.iter().filter(|g| !g.is_empty()) {
            let mut cur = 0;
            for (i, &l) in g.letters().iter().enumerate() {
                let next = if i + 1 == g.len() {
                    0
                } else {
                    nv += 1;
                    nv - 1
                };
                raw.push((cur, l, next));
                cur = next;
            }
        }
        // Union-find folding to a fixpoint.
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        loop {
            let mut seen: HashMap<(usize, Letter), usize> = HashMap::new();
            let mut merged = false;
            for &(u, l, v) in &raw {
                let (u, v) = (find(&mut parent, u), find(&mut parent, v));
                for (a, lab, b) in [(u, l, v), (v, l.inverse(), u)] {
                    match seen.get(&(a, lab)).copied() {
                        Some(t) => {
                            let (t, b) = (find(&mut parent, t), find(&mut parent, b));
                            if t != b {
                                // keep the base vertex as root
                                let (lo, hi) = if t < b { (t, b) } else { (b, t) };
                                parent[hi] = lo;
                                merged = true;
                            }
                        }
                        None => {
                            seen.insert((a, lab), b);
                        }
                    }
                }
            }
            if !merged {
                break;
            }
        }
        let mut edges = vec![BTreeMap::new(); nv];
        for &(u, l, v) in &raw {
            let (u, v) = (find(&mut parent, u), find(&mut parent, v));
            edges[u].insert((l.sym, l.inv), v);
            edges[v].insert((l.sym, !l.inv), u);
        }
        SubgroupGraph { edges }
    }

    pub fn contains(&self, w: &FreeWord) -> bool {
        let mut cur = 0;
        for l in w.letters() {
            match self.edges[cur].get(&(l.sym, l.inv)) {
                Some(&n) => cur = n,
                None => return false,
            }
        }
        cur == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // a=0, b=1, c=2, d=3; uppercase is the inverse
    fn w(s: &str) -> FreeWord {
        FreeWord::from_letters(s.chars().map(|ch| {
            let lower = ch.to_ascii_lowercase();
            Letter::new(lower as u32 - 'a' as u32, ch.is_ascii_uppercase())
        }))
    }

    /// Naive oracle: repeatedly delete the first adjacent inverse pair.
    fn naive_reduce(s: &str) -> String {
        let mut v: Vec<char> = s.chars().collect();
        loop {
            let pos = v.windows(2).position(|p| p[0] != p[1] && p[0].eq_ignore_ascii_case(&p[1]));
            match pos {
                Some(i) => {
                    v.drain(i..i + 2);
                }
                None => return v.into_iter().collect(),
            }
        }
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("ab").mul(&w("Bc")), w("ac"));
        assert_eq!(w("a").mul(&w("A")), FreeWord::identity());
        assert_eq!(w("abA").mul(&w("ab")), w(&naive_reduce("abAab")));
        assert_eq!(w("abA").mul(&w("ab")), w("abb"));
    }

    #[test]
    fn com_examples() {
        assert_eq!(w("abc").com(&w("abd")), w("ab"));
        assert_eq!(w("a").com(&w("b")), FreeWord::identity());
        assert_eq!(w("ab").com(&w("ab")), w("ab"));
    }

    #[test]
    fn cyclic_decompose_examples() {
        assert_eq!(w("abA").cyclic_decompose(), (w("A"), w("b")));
        assert_eq!(w("ba").cyclic_decompose(), (FreeWord::identity(), w("ba")));
        assert_eq!(w("abcBA").cyclic_decompose(), (w("BA"), w("c")));
    }

    #[test]
    fn root_examples() {
        assert_eq!(w("abab").root().unwrap(), (w("ab"), 2));
        assert_eq!(w("a").root().unwrap(), (w("a"), 1));
        assert_eq!(w("aba").root().unwrap(), (w("aba"), 1));
        assert_eq!(w("abA").root(), Err(WordError::NotCyclicallyReduced));
        assert_eq!(w("abb").root().unwrap(), (w("abb"), 1));
        assert_eq!(FreeWord::identity().root(), Err(WordError::EmptyRoot));
    }

    #[test]
    fn conjugacy_examples() {
        assert!(w("ab").is_conjugate(&w("ba")));
        assert!(!w("a").is_conjugate(&w("A")));
        assert!(w("abA").is_conjugate(&w("b")));
    }

    #[test]
    fn render_groups_powers() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(w("aaBa").render(&names), "a^2*b^-1*a");
        assert_eq!(FreeWord::identity().render(&names), "1");
    }

    #[test]
    fn subgroup_membership() {
        let g = SubgroupGraph::new(&[w("ab"), w("ba")]);
        assert!(g.contains(&w("abba")));
        assert!(g.contains(&w("BA")));
        assert!(!g.contains(&w("a")));
        let h = SubgroupGraph::new(&[w("a")]);
        assert!(!h.contains(&w("b")));
        assert!(h.contains(&w("aaaa")));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn raw() -> impl Strategy<Value = String> {
            prop::collection::vec(prop::sample::select(vec!['a', 'A', 'b', 'B', 'c', 'C']), 0..14)
                .prop_map(|v| v.into_iter().collect())
        }

        proptest! {
            #[test]
            fn matches_naive_oracle(x in raw(), y in raw()) {
                let xy = format!("{x}{y}");
                prop_assert_eq!(w(&x).mul(&w(&y)), w(&naive_reduce(&xy)));
                prop_assert_eq!(w(&xy).len(), naive_reduce(&xy).len());
            }

            #[test]
            fn associative(x in raw(), y in raw(), z in raw()) {
                let (x, y, z) = (w(&x), w(&y), w(&z));
                prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                prop_assert!(x.mul(&y).len() <= x.len() + y.len());
            }

            #[test]
            fn decompose_round_trip(x in raw()) {
                let x = w(&x);
                let (c, core) = x.cyclic_decompose();
                prop_assert!(core.is_cyclically_reduced());
                prop_assert_eq!(x.len(), 2 * c.len() + core.len());
                prop_assert_eq!(c.inverse().mul(&core).mul(&c), x);
            }

            #[test]
            fn root_round_trip(x in raw()) {
                let core = w(&x).cyclic_decompose().1;
                if !core.is_empty() {
                    let (r, k) = core.root().unwrap();
                    prop_assert_eq!(r.pow(k), core);
                    prop_assert_eq!(r.root().unwrap().1, 1);
                }
            }
        }
    }
}
