//! End-to-end acceptance: one line per criterion, exact comparisons only.
//! Runs without the libtest harness so the lines are always shown.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zn_tower::axioms::{check_axioms, SampleSpec, Sampler};
use zn_tower::factory;
use zn_tower::hnn::{extend_hnn, Placement};
use zn_tower::nielsen::{is_reduced, reduce_genset, zero_ball, GenSet, ReduceOptions};
use zn_tower::pregroup::{PSequence, Pregroup, REDUCED_RADIUS};
use zn_tower::tower::CLASH;
use zn_tower::words::{FreeWord, Letter};
use zn_tower::{parse, AbelianSubgroup, Element, GroupTower, LambdaVec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

// ---- naive free-group oracle: letters are ±1, ±2 ----

fn oracle_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn oracle_mul(a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    oracle_reduce(&w)
}

fn oracle_com(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).take_while(|(x, y)| x == y).map(|(x, _)| *x).collect()
}

fn to_element(w: &[i32]) -> Element {
    Element::Word(FreeWord::from_letters(w.iter().map(|&x| Letter::new(x.unsigned_abs() - 1, x < 0))))
}

fn from_element(e: &Element) -> Vec<i32> {
    let w = e.as_word().expect("base word");
    w.letters().iter().map(|l| if l.inv { -(l.sym as i32 + 1) } else { l.sym as i32 + 1 }).collect()
}

fn reduced_words(max: usize) -> Vec<Vec<i32>> {
    let mut all = vec![vec![]];
    let mut frontier: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            for x in [1, -1, 2, -2] {
                if w.last() != Some(&-x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

fn random_reduced(rng: &mut ChaCha8Rng, max: usize) -> Vec<i32> {
    let n = rng.gen_range(0..=max);
    let mut w: Vec<i32> = Vec::with_capacity(n);
    while w.len() < n {
        let x = [1, -1, 2, -2][rng.gen_range(0..4)];
        if w.last() != Some(&-x) {
            w.push(x);
        }
    }
    w
}

fn free_pair_agrees(t: &GroupTower, a: &[i32], b: &[i32]) -> Result<(), String> {
    let (x, y) = (to_element(a), to_element(b));
    let p = t.mul(&x, &y);
    let expect = oracle_mul(a, b);
    if from_element(&p) != expect {
        return Err(format!("mul {a:?}·{b:?}"));
    }
    if t.length(&p).coords() != [expect.len() as i64] {
        return Err(format!("length of {expect:?}"));
    }
    if from_element(&t.com(&x, &y)) != oracle_com(a, b) {
        return Err(format!("com {a:?}, {b:?}"));
    }
    Ok(())
}

fn c1_free_group_oracle() -> Outcome {
    let t = GroupTower::free(&["a", "b"]).map_err(|e| e.to_string())?;
    let words = reduced_words(6);
    let mut n = 0usize;
    for a in &words {
        for b in &words {
            free_pair_agrees(&t, a, b)?;
            n += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let (a, b) = (random_reduced(&mut rng, 30), random_reduced(&mut rng, 30));
        free_pair_agrees(&t, &a, &b)?;
        n += 1;
    }
    Ok(format!("{n} pairs"))
}

// ---- tower catalogue ----

fn axiom_towers() -> Vec<(&'static str, GroupTower)> {
    vec![
        ("T1", factory::t1()),
        ("T_ab", factory::t_ab()),
        ("Z^3", factory::free_abelian(3).unwrap()),
        ("surface(2)", factory::surface_orientable(2).unwrap()),
        ("nonorientable(3)", factory::surface_nonorientable(3).unwrap()),
    ]
}

fn factory_towers() -> Vec<(&'static str, GroupTower)> {
    let mut v = axiom_towers();
    v.push(("surface(3)", factory::surface_orientable(3).unwrap()));
    v.push(("nonorientable(4)", factory::surface_nonorientable(4).unwrap()));
    v.push(("T1*T1", factory::free_product(&factory::t1(), &factory::t1()).unwrap()));
    v
}

fn c2_axioms() -> Outcome {
    let mut total = 0;
    for (name, t) in axiom_towers() {
        let rep = check_axioms(&t, SampleSpec { seed: 0, samples: 5000, radius: 4, word_cap: 10 });
        if let Some(v) = rep.violations.first() {
            return Err(format!("{name}: {v} ({} violations)", rep.violations.len()));
        }
        total += rep.checked;
    }
    Ok(format!("{total} triples"))
}

fn c3_conjugation_law() -> Outcome {
    let mut n = 0;
    for (name, t) in factory_towers() {
        for (i, l) in t.letters().iter().enumerate() {
            let z = t.stable_element(i, 1);
            let zi = t.inv(&z);
            for (h, k) in l.source.iter().zip(&l.target) {
                if !t.equals(&t.product([&zi, h, &z]), k) {
                    return Err(format!("{name}: {}^-1 {} {} != {}", l.name, t.render(h), l.name, t.render(k)));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} relations"))
}

fn c4_connecting_element() -> Outcome {
    let mut n = 0;
    for (name, t) in factory_towers() {
        for (i, l) in t.letters().iter().enumerate() {
            let z = t.stable_element(i, 1);
            if !t.equals(&t.mul(l.u(), &z), &t.mul(&z, l.v())) {
                return Err(format!("{name}: u*{0} != {0}*v", l.name));
            }
            if t.length(&z) != LambdaVec::unit(t.rank(), l.level) {
                return Err(format!("{name}: |{}| = {}", l.name, t.length(&z)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} letters"))
}

fn c5_lambda_additivity() -> Outcome {
    let mut n = 0;
    for (seed, (name, t)) in axiom_towers().into_iter().enumerate() {
        let z = reduce_genset(&t, &GenSet::new(&t, &t.generators()), ReduceOptions::default()).set;
        let pg = Pregroup::new(&t, &z).map_err(|e| format!("{name}: {e}"))?;
        let ball: Vec<Element> = zero_ball(&t, &z, 2).into_iter().map(|h| h.element).collect();
        let letters = pg.letters().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
        let pick = |rng: &mut ChaCha8Rng| -> Element {
            let h = &ball[rng.gen_range(0..ball.len())];
            if letters.is_empty() || rng.gen_bool(0.25) {
                return h.clone();
            }
            let g = &ball[rng.gen_range(0..ball.len())];
            t.product([g, &letters[rng.gen_range(0..letters.len())], h])
        };
        for _ in 0..1000 {
            let len = rng.gen_range(1..=6);
            let items: Vec<Element> = (0..len).map(|_| pick(&mut rng)).collect();
            let r = pg.reduce(&PSequence { items: items.clone() }).map_err(|e| format!("{name}: {e}"))?;
            let g = t.product(&r.items);
            if !t.equals(&g, &t.product(&items)) {
                return Err(format!("{name}: reduction changed the product"));
            }
            let sum: i64 = r.items.iter().map(|x| t.lambda(x)).sum();
            if t.lambda(&g) != sum {
                let shown: Vec<String> = r.items.iter().map(|x| t.render(x)).collect();
                return Err(format!("{name}: λ({}) = {} but Σ = {sum}", shown.join(" · "), t.lambda(&g)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} sequences"))
}

fn c6_nielsen() -> Outcome {
    let towers = [factory::t1(), factory::surface_orientable(2).unwrap()];
    let mut worst = (0usize, 0usize);
    for (k, t) in towers.iter().enumerate() {
        let mut s = Sampler::new(t, SampleSpec { seed: 100 + k as u64, samples: 0, radius: 3, word_cap: 5 });
        let mut done = 0;
        while done < 100 {
            let size = s.rng().gen_range(2..=6);
            let gens: Vec<Element> = (0..size).map(|_| s.element()).collect();
            let y = GenSet::new(t, &gens);
            if y.weight(t) > 12 || y.ids().len() < 2 {
                continue;
            }
            let r = reduce_genset(t, &y, ReduceOptions::default());
            let shown = gens.iter().map(|g| t.render(g)).collect::<Vec<_>>().join(", ");
            if r.steps > r.bound {
                return Err(format!("{{{shown}}}: {} steps > bound {}", r.steps, r.bound));
            }
            if let Some(v) = is_reduced(t, &r.set, REDUCED_RADIUS).first() {
                return Err(format!("{{{shown}}}: not reduced: {v}"));
            }
            if !r.set.verify_witnesses(t) {
                return Err(format!("{{{shown}}}: witness does not evaluate back"));
            }
            worst = worst.max((r.steps, r.bound));
            done += 1;
        }
    }
    Ok(format!("200 sets, max {} steps", worst.0))
}

fn expect_rejection(label: &str, got: Result<impl Sized, zn_tower::TowerError>, needle: &str) -> Result<(), String> {
    match got {
        Ok(_) => Err(format!("{label}: accepted")),
        Err(e) if e.to_string().contains(needle) => Ok(()),
        Err(e) => Err(format!("{label}: wrong reason `{e}`")),
    }
}

fn c7_rejections() -> Outcome {
    let fa = GroupTower::free(&["a"]).unwrap();
    let a = fa.generator("a").unwrap();
    let got = extend_hnn(
        &fa,
        &AbelianSubgroup::new(vec![a.clone()]),
        &AbelianSubgroup::new(vec![fa.inv(&a)]),
        "s",
        Placement::NewLevel,
    );
    expect_rejection("φ(a) = a^-1", got, "conjugate-to-inverse")?;

    let fab = GroupTower::free(&["a", "b"]).unwrap();
    let got = extend_hnn(
        &fab,
        &AbelianSubgroup::new(vec![parse(&fab, "a").unwrap()]),
        &AbelianSubgroup::new(vec![parse(&fab, "a*b").unwrap()]),
        "s",
        Placement::NewLevel,
    );
    expect_rejection("|φ(a)| ≠ |a|", got, "length-mismatch")?;

    // s and s^-1 would both begin with x2-powers
    let f2 = GroupTower::free(&["x2", "x3"]).unwrap();
    let got = extend_hnn(
        &f2,
        &AbelianSubgroup::new(vec![parse(&f2, "x3^-1*x2").unwrap()]),
        &AbelianSubgroup::new(vec![parse(&f2, "x2*x3").unwrap()]),
        "x1",
        Placement::NewLevel,
    );
    expect_rejection("overlapping heads", got, CLASH)?;

    Ok("3 rejection paths".into())
}

/// Inserts one identity-valued pattern into a factor list: a cancelling pair
/// `x·x^-1`, or a pinch `h^k · z · φ(h)^-k · z^-1`.
fn perturb(t: &GroupTower, s: &mut Sampler, factors: &mut Vec<Element>) {
    let pos = s.rng().gen_range(0..=factors.len());
    let pinch = !t.letters().is_empty() && s.rng().gen_bool(0.5);
    let ins: Vec<Element> = if pinch {
        let i = s.rng().gen_range(0..t.letters().len());
        let l = t.letter(i);
        let j = s.rng().gen_range(0..l.source.len());
        let k = s.rng().gen_range(-3..=3);
        let z = t.stable_element(i, 1);
        vec![t.pow(&l.source[j], k), z.clone(), t.pow(&l.target[j], -k), t.inv(&z)]
    } else {
        let x = s.element();
        vec![x.clone(), t.inv(&x)]
    };
    factors.splice(pos..pos, ins);
}

fn c8_normal_form_uniqueness() -> Outcome {
    let mut n = 0;
    for (k, (name, t)) in factory_towers().into_iter().enumerate() {
        let mut s = Sampler::new(&t, SampleSpec { seed: 200 + k as u64, samples: 0, radius: 4, word_cap: 10 });
        for _ in 0..1000 {
            let base = s.factors();
            let g = t.product(&base);
            for r in 0..3 {
                let mut f = base.clone();
                for _ in 0..=r {
                    perturb(&t, &mut s, &mut f);
                }
                // alternate the association order too
                let h = if r % 2 == 0 {
                    t.product(&f)
                } else {
                    f.iter().rev().fold(Element::identity(), |acc, x| t.mul(x, &acc))
                };
                if h != g || !t.equals(&h, &g) {
                    return Err(format!("{name}: {} vs {}", t.render(&g), t.render(&h)));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} refactorizations"))
}

fn c9_surface_relators() -> Outcome {
    let s2 = factory::surface_orientable(2).unwrap();
    let rel = factory::orientable_relator(2);
    let r = parse(&s2, &rel).map_err(|e| e.to_string())?;
    if !r.is_identity() {
        return Err(format!("{rel} = {}", s2.render(&r)));
    }
    let n3 = factory::surface_nonorientable(3).unwrap();
    let rel3 = factory::nonorientable_relator(3);
    let r = parse(&n3, &rel3).map_err(|e| e.to_string())?;
    if !r.is_identity() {
        return Err(format!("{rel3} = {}", n3.render(&r)));
    }
    Ok(format!("{rel} = 1, {rel3} = 1"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("free-group oracle", c1_free_group_oracle),
        ("axioms L1-L6", c2_axioms),
        ("conjugation law", c3_conjugation_law),
        ("connecting element", c4_connecting_element),
        ("lambda additivity", c5_lambda_additivity),
        ("nielsen reduction", c6_nielsen),
        ("builder rejections", c7_rejections),
        ("normal-form uniqueness", c8_normal_form_uniqueness),
        ("surface relators", c9_surface_relators),
    ];
    let mut failed = Vec::new();
    for (i, (label, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = f();
        let secs = start.elapsed().as_secs_f64();
        match &res {
            Ok(d) => println!("criterion {}: PASS {label} ({d}; {secs:.1}s)", i + 1),
            Err(d) => {
                println!("criterion {}: FAIL {label}: {d} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
