use homaloidal::atlas::{family_make, AnyPoly, FamilyName, FamilySpec};
use homaloidal::field::{Field, FieldSpec};
use homaloidal::poly::Poly;
use homaloidal::polar::{is_homaloidal, DegreeTriple, HomaloidalVerdict, Verdict};

fn verdict<F: Field>(f: &Poly<F>) -> HomaloidalVerdict {
    is_homaloidal(f, 2, 11).unwrap()
}

fn run(field: FieldSpec, name: FamilyName, n: Option<u32>) -> (HomaloidalVerdict, u32) {
    let fam = family_make(&FamilySpec::new(name, n, field)).unwrap();
    match &fam.poly {
        AnyPoly::Rational(f) => (verdict(f), f.degree().unwrap()),
        AnyPoly::Finite(f) => (verdict(f), f.degree().unwrap()),
    }
}

fn check_invariants(v: &HomaloidalVerdict, d: u32) {
    let md = v.multidegree.expect("dominant");
    assert_eq!(md.d1, d as u64 - 1);
    assert_eq!(md.d2, 1);
    if let (Some(naive), Some(graph), Some(torsion)) = (v.naive, v.graph, v.torsion) {
        let sum = DegreeTriple::new(graph.d0 + torsion.d0, graph.d1 + torsion.d1, graph.d2 + torsion.d2);
        assert_eq!(naive, sum);
        assert_eq!(graph.d0 as u64, md.d0);
        assert_eq!(graph.d1 as u64, md.d1);
    }
}

#[test]
fn descent_family_at_scale() {
    for p in [2u64, 3, 5] {
        for n in (p..=10).step_by(p as usize).filter(|&n| n >= 2) {
            let (v, d) = run(FieldSpec::prime(p).unwrap(), FamilyName::NearPencil, Some(n as u32));
            check_invariants(&v, d);
            assert_eq!(v.verdict, Verdict::Homaloidal, "p={p} n={n}");
            assert_eq!(v.graph.unwrap().tuple(), (1, n as i64, 1), "p={p} n={n}");
            assert_eq!(v.torsion.unwrap().tuple(), (n as i64 - 2, 0, 0), "p={p} n={n}");
        }
    }
}

#[test]
fn linear_type_in_characteristic_zero() {
    for n in 2..=6 {
        let (v, d) = run(FieldSpec::rationals(), FamilyName::NearPencil, Some(n));
        check_invariants(&v, d);
        assert_eq!(v.torsion.unwrap().tuple(), (0, 0, 0));
        assert_eq!(v.multidegree.unwrap().triple(), (n as u64 - 1, n as u64, 1));
    }
}

#[test]
fn named_curves_satisfy_the_invariants() {
    let f3 = FieldSpec::prime(3).unwrap();
    for (field, name, n) in [
        (f3.clone(), FamilyName::IntroQuintic, None),
        (f3.clone(), FamilyName::Q5Quintic, None),
        (f3, FamilyName::Ramphoid, None),
        (FieldSpec::prime(5).unwrap(), FamilyName::Gn, Some(3)),
        (FieldSpec::prime(7).unwrap(), FamilyName::Gn, Some(4)),
    ] {
        let (v, d) = run(field, name, n);
        check_invariants(&v, d);
    }
}
