//! Nielsen-style reduction of symmetric generating sets by the moves μ, η
//! and ν, with a witness log expressing every input over the output.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::tower::{Element, GroupTower};
use crate::words::{FreeWord, SubgroupGraph};

/// Product `Π pool[id]^e`.
pub type Expr = Vec<(usize, i64)>;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signed {
    pub id: usize,
    pub sign: i8,
}

impl Signed {
    fn inverse(self) -> Self {
        Signed { id: self.id, sign: -self.sign }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Mu,
    Eta,
    Nu,
    Augment,
}

#[derive(Debug, Clone)]
pub struct Step {
    pub kind: Move,
    /// Rendered parameters `f`, `g`, `h` as applicable.
    pub params: Vec<String>,
    /// Removed generators with their expressions over the new set.
    pub removed: Vec<(usize, Expr)>,
    pub added: Vec<usize>,
}

/// A finite symmetric generating set stored as one representative per
/// inverse pair. Elements live in an append-only pool so witness
/// expressions stay valid across moves.
#[derive(Debug, Clone)]
pub struct GenSet {
    pool: Vec<Element>,
    current: Vec<usize>,
    inputs: Vec<(Element, Expr)>,
    log: Vec<Step>,
}

pub fn invert_expr(e: &Expr) -> Expr {
    e.iter().rev().map(|&(id, k)| (id, -k)).collect()
}

fn reduce_expr(e: Expr) -> Expr {
    let mut out: Expr = Vec::with_capacity(e.len());
    for (id, k) in e {
        match out.last_mut() {
            Some((j, m)) if *j == id => {
                *m += k;
                if *m == 0 {
                    out.pop();
                }
            }
            _ if k != 0 => out.push((id, k)),
            _ => {}
        }
    }
    out
}

fn term(s: Option<Signed>) -> Expr {
    s.map(|s| vec![(s.id, s.sign as i64)]).unwrap_or_default()
}

fn concat(parts: &[&Expr]) -> Expr {
    reduce_expr(parts.iter().flat_map(|p| p.iter().copied()).collect())
}

impl GenSet {
    pub fn new(t: &GroupTower, gens: &[Element]) -> Self {
        let mut y = GenSet { pool: Vec::new(), current: Vec::new(), inputs: Vec::new(), log: Vec::new() };
        for g in gens {
            let s = y.insert(t, g.clone());
            y.inputs.push((g.clone(), term(s)));
        }
        y
    }

    /// Adds `e` unless it is ε or already present up to inversion.
    fn insert(&mut self, t: &GroupTower, e: Element) -> Option<Signed> {
        if e.is_identity() {
            return None;
        }
        let ei = t.inv(&e);
        for &id in &self.current {
            if self.pool[id] == e {
                return Some(Signed { id, sign: 1 });
            }
            if self.pool[id] == ei {
                return Some(Signed { id, sign: -1 });
            }
        }
        self.pool.push(e);
        self.current.push(self.pool.len() - 1);
        Some(Signed { id: self.pool.len() - 1, sign: 1 })
    }

    fn remove(&mut self, id: usize) {
        self.current.retain(|&c| c != id);
    }

    pub fn element(&self, id: usize) -> &Element {
        &self.pool[id]
    }

    pub fn signed(&self, t: &GroupTower, s: Signed) -> Element {
        if s.sign > 0 {
            self.pool[s.id].clone()
        } else {
            t.inv(&self.pool[s.id])
        }
    }

    pub fn ids(&self) -> &[usize] {
        &self.current
    }

    /// Current representatives, one per inverse pair.
    pub fn elements(&self) -> Vec<Element> {
        self.current.iter().map(|&id| self.pool[id].clone()).collect()
    }

    /// `Y = Y^-1` as signed references.
    pub fn symmetric(&self) -> Vec<Signed> {
        self.current.iter().flat_map(|&id| [Signed { id, sign: 1 }, Signed { id, sign: -1 }]).collect()
    }

    pub fn plus(&self, t: &GroupTower) -> Vec<usize> {
        self.current.iter().copied().filter(|&id| t.lambda(&self.pool[id]) > 0).collect()
    }

    pub fn zero(&self, t: &GroupTower) -> Vec<usize> {
        self.current.iter().copied().filter(|&id| t.lambda(&self.pool[id]) == 0).collect()
    }

    /// Sum of λ over inverse-pair representatives.
    pub fn weight(&self, t: &GroupTower) -> i64 {
        self.current.iter().map(|&id| t.lambda(&self.pool[id])).sum()
    }

    pub fn log(&self) -> &[Step] {
        &self.log
    }

    pub fn inputs(&self) -> impl Iterator<Item = &Element> {
        self.inputs.iter().map(|(e, _)| e)
    }

    pub fn eval(&self, t: &GroupTower, e: &Expr) -> Element {
        e.iter().fold(Element::identity(), |acc, &(id, k)| t.mul(&acc, &t.pow(&self.pool[id], k)))
    }

    /// Expression of the `i`-th input over the current generators.
    pub fn witness(&self, i: usize) -> Expr {
        let defs: HashMap<usize, &Expr> =
            self.log.iter().flat_map(|s| s.removed.iter().map(|(id, e)| (*id, e))).collect();
        let live: HashSet<usize> = self.current.iter().copied().collect();
        let mut memo = HashMap::new();
        expand(&self.inputs[i].1, &defs, &live, &mut memo)
    }

    /// Every input equals its witness evaluated in the current set.
    pub fn verify_witnesses(&self, t: &GroupTower) -> bool {
        (0..self.inputs.len()).all(|i| {
            let w = self.witness(i);
            w.iter().all(|(id, _)| self.current.contains(id)) && t.equals(&self.eval(t, &w), &self.inputs[i].0)
        })
    }

    pub fn render_expr(&self, t: &GroupTower, e: &Expr) -> String {
        if e.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = e
            .iter()
            .map(|&(id, k)| {
                let s = format!("({})", t.render(&self.pool[id]));
                if k == 1 {
                    s
                } else {
                    format!("{s}^{k}")
                }
            })
            .collect();
        parts.join("*")
    }
}

fn expand(e: &Expr, defs: &HashMap<usize, &Expr>, live: &HashSet<usize>, memo: &mut HashMap<usize, Expr>) -> Expr {
    let mut out = Vec::new();
    for &(id, k) in e {
        let base = if live.contains(&id) {
            vec![(id, 1)]
        } else if let Some(x) = memo.get(&id) {
            x.clone()
        } else {
            let x = expand(defs[&id], defs, live, memo);
            memo.insert(id, x.clone());
            x
        };
        let unit = if k < 0 { invert_expr(&base) } else { base };
        for _ in 0..k.abs() {
            out.extend(unit.iter().copied());
        }
    }
    reduce_expr(out)
}

/// `h ∈ ⟨Y₀⟩` together with its expression over `Y₀`.
#[derive(Debug, Clone)]
pub struct Hword {
    pub element: Element,
    pub expr: Expr,
}

impl Hword {
    pub fn identity() -> Self {
        Hword { element: Element::identity(), expr: Vec::new() }
    }
}

impl GenSet {
    fn is_zero_expr(&self, t: &GroupTower, e: &Expr) -> bool {
        e.iter().all(|(id, _)| self.current.contains(id) && t.lambda(&self.pool[*id]) == 0)
    }

    fn push_step(&mut self, kind: Move, params: Vec<String>, removed: Vec<(usize, Expr)>, added: Vec<usize>) {
        self.log.push(Step { kind, params, removed, added });
    }
}

/// Representative expression for a removed signed generator `s` given the
/// expression `e` of `s` itself.
fn rep_expr(s: Signed, e: Expr) -> (usize, Expr) {
    (s.id, if s.sign > 0 { e } else { invert_expr(&e) })
}

fn added_ids(before: &GenSet, after: &GenSet) -> Vec<usize> {
    after.current.iter().copied().filter(|id| !before.current.contains(id)).collect()
}

/// μ: `f = u ∘ w₁`, `h ∗ g = u ∘ w₂` with `λ(u) > 0`. `None` when
/// inapplicable.
pub fn mu(t: &GroupTower, y: &GenSet, f: Signed, g: Signed, h: &Hword) -> Option<GenSet> {
    let (fe, ge) = (y.signed(t, f), y.signed(t, g));
    if f == g || t.lambda(&fe) == 0 || t.lambda(&ge) == 0 || !y.is_zero_expr(t, &h.expr) {
        return None;
    }
    if !y.current.contains(&f.id) || !y.current.contains(&g.id) {
        return None;
    }
    let hg = t.mul(&h.element, &ge);
    let u = t.com(&fe, &hg);
    if t.lambda(&u) == 0 {
        return None;
    }
    let ui = t.inv(&u);
    let w2 = t.mul(&ui, &hg);
    let hinv = invert_expr(&h.expr);
    let mut out = y.clone();
    let removed = if f == g.inverse() {
        out.remove(g.id);
        let su = out.insert(t, u.clone());
        let swu = out.insert(t, t.mul(&w2, &u));
        // g = h^-1 · u · (w₂u) · u^-1
        let ge_expr = concat(&[&hinv, &term(su), &term(swu), &invert_expr(&term(su))]);
        vec![rep_expr(g, ge_expr)]
    } else {
        let w1 = t.mul(&ui, &fe);
        let k = t.mul(&t.inv(&fe), &hg);
        out.remove(f.id);
        out.remove(g.id);
        let sw1 = out.insert(t, w1);
        let sw2 = out.insert(t, w2);
        let su = out.insert(t, u);
        if t.lambda(&k) == 0 {
            out.insert(t, k);
        }
        let fx = concat(&[&term(su), &term(sw1)]);
        let gx = concat(&[&hinv, &term(su), &term(sw2)]);
        vec![rep_expr(f, fx), rep_expr(g, gx)]
    };
    if out.weight(t) >= y.weight(t) {
        return None;
    }
    let params = vec![t.render(&fe), t.render(&ge), t.render(&h.element)];
    let added = added_ids(y, &out);
    out.push_step(Move::Mu, params, removed, added);
    Some(out)
}

/// η: `f = u ∘ f₁`, `h ∗ f = u ∘ f₂` with `0 < λ(u) < λ(f)`.
pub fn eta(t: &GroupTower, y: &GenSet, f: Signed, h: &Hword) -> Option<GenSet> {
    let fe = y.signed(t, f);
    if !y.current.contains(&f.id) || !y.is_zero_expr(t, &h.expr) {
        return None;
    }
    let u = t.com(&fe, &t.mul(&h.element, &fe));
    let lu = t.lambda(&u);
    if lu == 0 || lu >= t.lambda(&fe) {
        return None;
    }
    let ui = t.inv(&u);
    let f1 = t.mul(&ui, &fe);
    let k = t.product([&ui, &h.element, &u]);
    let mut out = y.clone();
    out.remove(f.id);
    let sf1 = out.insert(t, f1);
    let su = out.insert(t, u);
    out.insert(t, k);
    if out.weight(t) > y.weight(t) {
        return None;
    }
    let removed = vec![rep_expr(f, concat(&[&term(su), &term(sf1)]))];
    let params = vec![t.render(&fe), t.render(&h.element)];
    let added = added_ids(y, &out);
    out.push_step(Move::Eta, params, removed, added);
    Some(out)
}

/// ν: replaces a non-cyclically-reduced `f = c^-1 ∘ f̄ ∘ c` by `c`, `f̄`.
pub fn nu(t: &GroupTower, y: &GenSet, f: Signed) -> Option<GenSet> {
    let fe = y.signed(t, f);
    if !y.current.contains(&f.id) || t.lambda(&fe) == 0 || t.is_cyclically_reduced(&fe) {
        return None;
    }
    let (c, core) = t.cyclic_decompose(&fe);
    let mut out = y.clone();
    out.remove(f.id);
    let sc = out.insert(t, c);
    let sk = out.insert(t, core);
    if out.weight(t) > y.weight(t) {
        return None;
    }
    let fx = concat(&[&invert_expr(&term(sc)), &term(sk), &term(sc)]);
    let added = added_ids(y, &out);
    out.push_step(Move::Nu, vec![t.render(&fe)], vec![rep_expr(f, fx)], added);
    Some(out)
}

/// Adds a λ-zero element to `Y₀` (closure for condition (d)).
fn augment(t: &GroupTower, y: &mut GenSet, k: Element, params: Vec<String>) -> bool {
    let before = y.clone();
    y.insert(t, k);
    let added = added_ids(&before, y);
    if added.is_empty() {
        return false;
    }
    y.push_step(Move::Augment, params, Vec::new(), added);
    true
}

/// First top-level position: `λ(com(x, y)) > 0` iff the keys agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Key {
    Letter(u32, bool),
    Block(Element, usize, i8),
}

fn head_key(t: &GroupTower, e: &Element) -> Option<Key> {
    match e {
        Element::Word(w) if t.rank() == 1 => w.letters().first().map(|l| Key::Letter(l.sym, l.inv)),
        Element::Hnn { level, pieces, blocks } if *level == t.rank() => {
            Some(Key::Block(pieces[0].clone(), blocks[0].letter, blocks[0].sign))
        }
        _ => None,
    }
}

/// Elements of `⟨Y₀⟩` of word length at most `radius` in the `Y₀`
/// generators, shortest first.
pub fn zero_ball(t: &GroupTower, y: &GenSet, radius: usize) -> Vec<Hword> {
    let gens: Vec<Signed> =
        y.zero(t).into_iter().flat_map(|id| [Signed { id, sign: 1 }, Signed { id, sign: -1 }]).collect();
    let mut seen: HashSet<Element> = HashSet::from([Element::identity()]);
    let mut out = vec![Hword::identity()];
    let mut frontier = 0..1;
    for _ in 0..radius {
        let start = out.len();
        for i in frontier.clone() {
            for &s in &gens {
                let e = t.mul(&out[i].element, &y.signed(t, s));
                if seen.insert(e.clone()) {
                    let mut expr = out[i].expr.clone();
                    expr.push((s.id, s.sign as i64));
                    out.push(Hword { element: e, expr: reduce_expr(expr) });
                }
            }
        }
        frontier = start..out.len();
    }
    out
}

/// `x ∈ ⟨Y₀⟩`: exact (Stallings graph) when `Y₀` lies in the base free
/// group, otherwise membership in the enumerated ball.
struct ZeroMembership {
    graph: Option<SubgroupGraph>,
    ball: HashSet<Element>,
}

impl ZeroMembership {
    fn new(t: &GroupTower, y: &GenSet, ball: &[Hword]) -> Self {
        let words: Option<Vec<FreeWord>> = y.zero(t).iter().map(|&id| y.pool[id].as_word().cloned()).collect();
        ZeroMembership {
            graph: words.map(|w| SubgroupGraph::new(&w)),
            ball: ball.iter().map(|h| h.element.clone()).collect(),
        }
    }

    fn contains(&self, x: &Element) -> bool {
        match (&self.graph, x) {
            (Some(g), Element::Word(w)) => g.contains(w),
            (Some(_), _) => false,
            (None, _) => self.ball.contains(x),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReduceOptions {
    /// Radius of the `⟨Y₀⟩` ball searched for `h`.
    pub radius: usize,
    /// Maximum number of closure elements added for condition (d).
    pub augment_limit: usize,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { radius: 3, augment_limit: 16 }
    }
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub set: GenSet,
    /// Applications of μ, η, ν.
    pub steps: usize,
    /// `(|Y|_λ)²` with `|Y|_λ` summed over the whole symmetric set.
    pub bound: usize,
}

struct Scan {
    /// `(f, g, h)` indices with `λ(com(f, h∗g)) > 0`.
    hits: Vec<(usize, usize, usize)>,
    plus: Vec<(Signed, Element)>,
}

fn scan(t: &GroupTower, y: &GenSet, ball: &[Hword]) -> Scan {
    let mut plus: Vec<(Signed, Element)> =
        y.symmetric().into_iter().map(|s| (s, y.signed(t, s))).filter(|(_, e)| t.lambda(e) > 0).collect();
    plus.sort_by_cached_key(|(_, e)| t.render(e));
    let mut index: HashMap<Key, Vec<usize>> = HashMap::new();
    for (i, (_, e)) in plus.iter().enumerate() {
        if let Some(k) = head_key(t, e) {
            index.entry(k).or_default().push(i);
        }
    }
    let mut hits = Vec::new();
    for (gi, (_, g)) in plus.iter().enumerate() {
        for (hi, h) in ball.iter().enumerate() {
            let hg = if h.element.is_identity() { g.clone() } else { t.mul(&h.element, g) };
            if let Some(fs) = head_key(t, &hg).and_then(|k| index.get(&k)) {
                hits.extend(fs.iter().map(|&fi| (fi, gi, hi)));
            }
        }
    }
    Scan { hits, plus }
}

fn sorted_hits(t: &GroupTower, sc: &Scan, ball: &[Hword], same: bool) -> Vec<(usize, usize, usize)> {
    let mut v: Vec<_> = sc.hits.iter().copied().filter(|&(f, g, _)| (f == g) == same).collect();
    v.sort_by_cached_key(|&(f, g, h)| (t.render(&sc.plus[f].1), t.render(&sc.plus[g].1), t.render(&ball[h].element)));
    v
}

/// One move: μ, then ν, then η; ties broken by the smallest rendered
/// parameter tuple.
fn next_move(t: &GroupTower, y: &GenSet, ball: &[Hword]) -> Option<GenSet> {
    let sc = scan(t, y, ball);
    for (f, g, h) in sorted_hits(t, &sc, ball, false) {
        if let Some(o) = mu(t, y, sc.plus[f].0, sc.plus[g].0, &ball[h]) {
            return Some(o);
        }
    }
    for (s, _) in sc.plus.iter().filter(|(s, _)| s.sign > 0) {
        if let Some(o) = nu(t, y, *s) {
            return Some(o);
        }
    }
    for (f, _, h) in sorted_hits(t, &sc, ball, true) {
        if let Some(o) = eta(t, y, sc.plus[f].0, &ball[h]) {
            return Some(o);
        }
    }
    None
}

/// A missing closure element `f^-1 ∗ h ∗ f` for condition (d).
fn closure_gap(t: &GroupTower, y: &GenSet, ball: &[Hword]) -> Option<(Element, Vec<String>)> {
    let sc = scan(t, y, ball);
    let zm = ZeroMembership::new(t, y, ball);
    for (f, _, h) in sorted_hits(t, &sc, ball, true) {
        let fe = &sc.plus[f].1;
        let he = &ball[h].element;
        let u = t.com(fe, &t.mul(he, fe));
        if t.lambda(&u) != t.lambda(fe) {
            continue;
        }
        let k = t.product([&t.inv(fe), he, fe]);
        if t.lambda(&k) == 0 && !zm.contains(&k) {
            return Some((k, vec![t.render(fe), t.render(he)]));
        }
    }
    None
}

pub fn reduce_genset(t: &GroupTower, y: &GenSet, opts: ReduceOptions) -> Reduction {
    let w = (2 * y.weight(t)).max(0) as usize;
    let bound = w * w;
    let mut cur = y.clone();
    let mut steps = 0;
    let mut added = 0;
    loop {
        let ball = zero_ball(t, &cur, opts.radius);
        if let Some(next) = next_move(t, &cur, &ball) {
            cur = next;
            steps += 1;
            continue;
        }
        if added >= opts.augment_limit {
            break;
        }
        let Some((k, params)) = closure_gap(t, &cur, &ball) else { break };
        if !augment(t, &mut cur, k, params) {
            break;
        }
        added += 1;
    }
    Reduction { set: cur, steps, bound }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// `'a'`–`'d'`.
    pub condition: char,
    pub f: String,
    pub g: String,
    pub h: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) f={} g={} h={}", self.condition, self.f, self.g, self.h)
    }
}

/// Conditions (a)–(d) over the `⟨Y₀⟩` ball of the given radius.
pub fn is_reduced(t: &GroupTower, y: &GenSet, radius: usize) -> Vec<Violation> {
    let ball = zero_ball(t, y, radius);
    let zm = ZeroMembership::new(t, y, &ball);
    let sc = scan(t, y, &ball);
    let mut out = Vec::new();
    for id in y.plus(t) {
        let f = &y.pool[id];
        if !t.is_cyclically_reduced(f) {
            let r = t.render(f);
            out.push(Violation { condition: 'a', f: r.clone(), g: r, h: "1".into() });
        }
    }
    for (fi, gi, hi) in sorted_hits(t, &sc, &ball, false).into_iter().chain(sorted_hits(t, &sc, &ball, true)) {
        let (fe, ge, he) = (&sc.plus[fi].1, &sc.plus[gi].1, &ball[hi].element);
        let v = |c| Violation { condition: c, f: t.render(fe), g: t.render(ge), h: t.render(he) };
        if fi != gi {
            out.push(v('b'));
            continue;
        }
        let l = t.lambda(&t.com(fe, &t.mul(he, fe)));
        if l < t.lambda(fe) {
            out.push(v('c'));
        } else if !zm.contains(&t.product([&t.inv(fe), he, fe])) {
            out.push(v('d'));
        }
    }
    out
}
