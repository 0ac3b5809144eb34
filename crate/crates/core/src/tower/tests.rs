use super::*;
use crate::expr::parse;
use crate::factory::{free_abelian, t1, t_ab};

fn p(t: &GroupTower, s: &str) -> Element {
    parse(t, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

#[test]
fn multiply_examples() {
    let t = t1();
    assert_eq!(p(&t, "z^-1*a*z"), p(&t, "b"));
    let g = p(&t, "a*z*b^-1");
    assert!(t.mul(&g, &t.inv(&g)).is_identity());
    assert_eq!(t.mul(&p(&t, "a^3*z"), &p(&t, "b^-3")), p(&t, "z"));
}

#[test]
fn invert_examples() {
    let t = t1();
    assert!(t.inv(&Element::identity()).is_identity());
    assert_eq!(t.inv(&p(&t, "a*b")), p(&t, "b^-1*a^-1"));
    let g = p(&t, "a*z*b");
    assert_eq!(t.render(&t.inv(&g)), t.render(&p(&t, "b^-1*z^-1*a^-1")));
    assert_eq!(t.length(&g), t.length(&t.inv(&g)));
}

#[test]
fn lengths_heights_lambda() {
    let t = t1();
    assert_eq!(t.length(&p(&t, "z")).coords(), &[0, 1]);
    assert_eq!(t.length(&p(&t, "a*b*a")).coords(), &[3, 0]);
    assert_eq!(t.length(&p(&t, "a*z")).coords(), &[1, 1]);
    assert_eq!(t.length(&p(&t, "a^3*z")).coords(), &[3, 1]);
    assert_eq!(t.lambda(&p(&t, "z")), 1);
    assert_eq!(t.lambda(&p(&t, "a*b")), 0);
    assert_eq!(t.lambda(&p(&t, "z*a*z")), 2);
    assert_eq!(t.height(&Element::identity()), 0);
    assert_eq!(t.height(&p(&t, "a")), 1);
    assert_eq!(t.height(&p(&t, "z")), 2);
}

#[test]
fn com_examples() {
    let t = GroupTower::free(&["a", "b", "c", "d"]).unwrap();
    assert_eq!(t.com(&p(&t, "a*b*c"), &p(&t, "a*b*d")), p(&t, "a*b"));
    let t = t1();
    assert_eq!(t.com(&p(&t, "z*a"), &p(&t, "z*b")), p(&t, "z"));
    let g = p(&t, "a*z*b");
    assert_eq!(t.com(&g, &g), g);
    // a shared head period is common to both
    assert_eq!(t.com(&p(&t, "z"), &p(&t, "a*b")), p(&t, "a"));
}

#[test]
fn equality_examples() {
    let t = t1();
    assert!(t.equals(&p(&t, "a^3*z"), &p(&t, "z*b^3")));
    assert!(!t.equals(&p(&t, "z"), &p(&t, "z^-1")));
    assert!(t.equals(&Element::identity(), &Element::identity()));
}

#[test]
fn cyclic_decompositions() {
    let f = GroupTower::free(&["a", "b"]).unwrap();
    let (c, core) = f.cyclic_decompose(&p(&f, "a*b*a^-1"));
    assert_eq!((c, core), (p(&f, "a^-1"), p(&f, "b")));
    let t = t1();
    let z = p(&t, "z");
    assert_eq!(t.cyclic_decompose(&z), (Element::identity(), z.clone()));
    for s in ["b*z*b^-1", "a^-1*z*a", "b^2*a*z*a^-1*b^-2", "z*a*z^-1"] {
        let g = p(&t, s);
        let (c, core) = t.cyclic_decompose(&g);
        assert!(t.is_cyclically_reduced(&core), "{s}");
        assert_eq!(t.product([&t.inv(&c), &core, &c]), g, "{s}");
        assert_eq!(t.length(&g), &t.length(&c).scale(2) + &t.length(&core), "{s}");
    }
    // z ends with a b-period, so b*z*b^-1 is already cyclically reduced
    let g = p(&t, "b*z*b^-1");
    assert_eq!(t.cyclic_decompose(&g), (Element::identity(), g.clone()));
    let (c, core) = t.cyclic_decompose(&p(&t, "a*z*a^-1"));
    assert_eq!(c, p(&t, "a^-1"));
    assert_eq!(core, z);
}

#[test]
fn strip_examples() {
    let t = GroupTower::free(&["a", "b"]).unwrap();
    let a = p(&t, "a");
    assert_eq!(t.strip_periodic(&p(&t, "a^3*b"), &a, Side::Left).unwrap(), (p(&t, "b"), 3));
    assert_eq!(t.strip_periodic(&p(&t, "b"), &a, Side::Left).unwrap(), (p(&t, "b"), 0));
    assert_eq!(t.strip_periodic(&p(&t, "a^-2*b*a"), &a, Side::Left).unwrap(), (p(&t, "b*a"), -2));
    assert_eq!(t.strip_periodic(&p(&t, "b*a^2"), &a, Side::Right).unwrap(), (p(&t, "b"), 2));
    assert_eq!(t.strip_periodic(&a, &Element::identity(), Side::Left), Err(TowerError::Identity));
    let t = t1();
    assert!(t.strip_periodic(&p(&t, "z"), &p(&t, "a"), Side::Left).is_err());
}

#[test]
fn commutation_and_centralizers() {
    let tab = t_ab();
    assert!(tab.commutes(&p(&tab, "a"), &p(&tab, "z")));
    let f = GroupTower::free(&["a", "b"]).unwrap();
    assert!(!f.commutes(&p(&f, "a"), &p(&f, "b")));
    assert!(f.commutes(&p(&f, "a*b"), &p(&f, "(a*b)^2")));

    let c = f.centralizer(&p(&f, "a^2")).unwrap();
    assert_eq!(f.subgroup_elements(&c), vec![p(&f, "a")]);
    let c = tab.centralizer(&p(&tab, "a")).unwrap();
    assert_eq!(c.rank(), 2);
    assert_eq!(tab.subgroup_elements(&c), vec![p(&tab, "a"), p(&tab, "z")]);
    let t = t1();
    let c = t.centralizer(&p(&t, "a")).unwrap();
    assert_eq!(t.subgroup_elements(&c), vec![p(&t, "a")]);
    let t3 = free_abelian(3).unwrap();
    assert_eq!(t3.centralizer(&p(&t3, "a")).unwrap().rank(), 3);
    assert_eq!(f.centralizer(&Element::identity()), Err(TowerError::Identity));
    let c = f.centralizer(&p(&f, "b*a^3*b^-1")).unwrap();
    assert_eq!(f.subgroup_elements(&c), vec![p(&f, "b*a*b^-1")]);
}

#[test]
fn abelian_membership_examples() {
    let f = GroupTower::free(&["a", "b"]).unwrap();
    let a = AbelianSubgroup::new(vec![p(&f, "a")]);
    assert_eq!(f.abelian_membership(&p(&f, "a^3"), &a), Some(vec![3]));
    assert_eq!(f.abelian_membership(&p(&f, "b"), &a), None);
    let t = t_ab();
    let az = AbelianSubgroup::new(vec![p(&t, "a"), p(&t, "z")]);
    assert_eq!(t.abelian_membership(&p(&t, "a^2*z^3"), &az), Some(vec![2, 3]));
    assert_eq!(t.abelian_membership(&p(&t, "a^-1*z^-2"), &az), Some(vec![-1, -2]));
}

#[test]
fn slide_tie_break() {
    let t = t_ab();
    let g = p(&t, "z*a*z");
    let Element::Hnn { pieces, blocks, .. } = &g else { panic!() };
    assert!(pieces.iter().all(Element::is_identity));
    assert_eq!(blocks[0].offset, vec![0]);
    assert_eq!(blocks[1].offset, vec![1]);
    assert_eq!(t.render(&g), "z^2*a");
}

#[test]
fn render_round_trip() {
    let t = t1();
    for s in ["a^3*z", "z^-1*a^2*z*b", "b^-1*z^-1*a^-1", "z*a*z^-1*b", "(a*z)^3"] {
        let g = p(&t, s);
        let r = t.render(&g);
        assert_eq!(p(&t, &r), g, "{s} -> {r}");
    }
    assert_eq!(t.render(&p(&t, "a^3*z")), "z*b^3");
}

#[test]
fn overlapping_heads_rejected() {
    let t = GroupTower::free(&["x2", "x3"]).unwrap();
    let spec = LetterSpec {
        name: "x1".into(),
        level: 2,
        source: vec![parse(&t, "x3^-1*x2").unwrap()],
        target: vec![parse(&t, "x2*x3").unwrap()],
    };
    let err = t.add_letter(spec).unwrap_err().to_string();
    assert!(err.contains(CLASH), "{err}");
}
