use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vii_lattice::config::CurveConfig;
use vii_lattice::enumerate::{enumerate, verify, CurveAssignment, Representation};
use vii_lattice::germ::{validate_primary, validate_strong, ComplexParam, HopfGermPrimary, HopfGermStrong};
use vii_lattice::lattice::{
    canonical_class, class_geometry, classify_normal_form, intersect, IndexSet, LatticeClass, NormalForm,
};
use vii_lattice::linalg::{is_negative_definite, Definiteness, IntMatrix};
use vii_lattice::nac::{solve_nac, NacOutcome};
use vii_lattice::report::ConfigFile;
use vii_lattice::{families, oracle};

fn class_of(v: Vec<i64>) -> LatticeClass {
    LatticeClass::new(v).unwrap()
}

fn vectors(n: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), count)
}

fn form_strategy(n: usize) -> impl Strategy<Value = NormalForm> {
    (0..n, prop::collection::btree_set(0..n, 0..n), any::<bool>(), 0..=n).prop_map(move |(i, set, b, r)| {
        let set = IndexSet::new(set.into_iter().filter(|&j| j != i).collect()).unwrap();
        match (b, r % 3) {
            (_, 0) => NormalForm::FullCycle { r },
            (true, _) => NormalForm::TypeA { i, set },
            (false, _) => NormalForm::TypeB { i, set },
        }
    })
}

proptest! {
    #[test]
    fn intersection_is_symmetric_and_bilinear(v in (1usize..7).prop_flat_map(|n| vectors(n, 3)), k in -4i64..=4) {
        let (a, b, c) = (class_of(v[0].clone()), class_of(v[1].clone()), class_of(v[2].clone()));
        prop_assert_eq!(intersect(&a, &b).unwrap(), intersect(&b, &a).unwrap());
        let sum = a.checked_add(&b).unwrap();
        prop_assert_eq!(intersect(&sum, &c).unwrap(), intersect(&a, &c).unwrap() + intersect(&b, &c).unwrap());
        let scaled = a.checked_scale(k).unwrap();
        prop_assert_eq!(intersect(&scaled, &c).unwrap(), k * intersect(&a, &c).unwrap());
        prop_assert!(intersect(&a, &a).unwrap() <= 0);
    }

    #[test]
    fn exceptional_classes_are_basis_vectors(v in (1usize..6).prop_flat_map(|n| prop::collection::vec(-2i64..=2, n))) {
        let n = v.len();
        let x = class_of(v.clone());
        let k = canonical_class(n).unwrap();
        let exceptional = intersect(&x, &x).unwrap() == -1 && intersect(&k, &x).unwrap() == -1;
        let is_basis = (0..n).any(|i| x == LatticeClass::basis(n, i).unwrap());
        prop_assert_eq!(exceptional, is_basis, "{:?}", v);
    }

    #[test]
    fn normal_form_geometry(form in (1usize..8).prop_flat_map(form_strategy), extra in 0usize..2) {
        let n = match &form {
            NormalForm::TypeA { i, set } | NormalForm::TypeB { i, set } =>
                1 + (*i).max(set.members().last().copied().unwrap_or(0)) + extra,
            NormalForm::FullCycle { r } => *r + extra,
            NormalForm::Other => unreachable!(),
        }.max(1);
        let c = LatticeClass::from_form(n, &form).unwrap();
        let g = class_geometry(&c).unwrap();
        match &form {
            NormalForm::TypeA { set, .. } => {
                let s = set.len() as i64;
                prop_assert_eq!((g.self_int, g.k_degree), (-1 - s, s - 1));
                prop_assert_eq!(g.arithmetic_genus, Rational64::from_integer(0));
            }
            NormalForm::TypeB { set, .. } => {
                let s = set.len() as i64;
                prop_assert_eq!((g.self_int, g.k_degree), (-4 - s, 2 + s));
                prop_assert_eq!(g.arithmetic_genus, Rational64::from_integer(0));
            }
            NormalForm::FullCycle { r } => {
                let t = (n - r) as i64;
                prop_assert_eq!((g.self_int, g.k_degree), (-t, t));
                prop_assert_eq!(g.arithmetic_genus, Rational64::from_integer(1));
            }
            NormalForm::Other => unreachable!(),
        }
        // Re-classifying recovers the same class (forms may coincide, e.g. -L_{n-1}).
        let back = LatticeClass::from_form(n, &classify_normal_form(&c)).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn renumbering_preserves_products(v in (1usize..7).prop_flat_map(|n| (vectors(n, 2), Just((0..n).collect::<Vec<_>>()).prop_shuffle()))) {
        let (vs, perm) = v;
        let (a, b) = (class_of(vs[0].clone()), class_of(vs[1].clone()));
        prop_assert_eq!(intersect(&a.permuted(&perm), &b.permuted(&perm)).unwrap(), intersect(&a, &b).unwrap());
    }

    #[test]
    fn nac_is_linear_in_m(seed in any::<u64>(), m in 2u64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 + (seed % 5) as usize;
        if let Some(cfg) = families::random_lattice_config(&mut rng, n, n, 50) {
            match (solve_nac(&cfg, 1).unwrap(), solve_nac(&cfg, m).unwrap()) {
                (NacOutcome::Solved(a), NacOutcome::Solved(b)) => {
                    let mr = BigRational::from_integer(m.into());
                    prop_assert!(a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| x * &mr == *y));
                    prop_assert_eq!(a.index, b.index);
                }
                (NacOutcome::NoSolution(x), NacOutcome::NoSolution(y)) => {
                    prop_assert_eq!(std::mem::discriminant(&x), std::mem::discriminant(&y));
                }
                (x, y) => prop_assert!(false, "m=1 {:?} vs m={} {:?}", x, m, y),
            }
        }
    }

    #[test]
    fn config_file_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = families::random_config(&mut rng, 7);
        let text = ConfigFile::from_config(&cfg).to_json();
        prop_assert_eq!(ConfigFile::parse(&text).unwrap().to_config(), cfg);
    }

    #[test]
    fn definiteness_matches_principal_minors(rows in (1usize..6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))) {
        let n = rows.len();
        let mut m = IntMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate().skip(i) {
                m.set(i, j, x);
                m.set(j, i, x);
            }
        }
        prop_assert_eq!(is_negative_definite(&m).unwrap(), oracle::definiteness_by_principal_minors(&m));
        prop_assert_eq!(m.determinant(), oracle::cofactor_determinant(&m).into());
    }

    #[test]
    fn strong_region_embeds_in_primary(al in 1i64..100, a in 1i64..100, den in 100i64..200) {
        let alpha = ComplexParam::from_ratio(al, den);
        let ap = ComplexParam::from_ratio(a, den);
        let strong = validate_strong(&HopfGermStrong { alpha: alpha.clone(), a: ap.clone(), s: ComplexParam::from_ratio(0, 1), m: 1 }, 0.0);
        if strong.valid {
            let alpha2 = ap.mul(&alpha.inv().unwrap());
            let p = validate_primary(&HopfGermPrimary { alpha1: alpha, alpha2, s: ComplexParam::from_ratio(0, 1), m: 1 }, 0.0);
            prop_assert!(p.valid, "{:?}", p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn enumerated_representations_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 + (seed % 4) as usize;
        let Some(cfg) = families::random_lattice_config(&mut rng, n, n, 50) else { return Ok(()) };
        let Ok(e) = enumerate(&cfg, 8, None) else { return Ok(()) };
        for rep in &e.representations {
            prop_assert!(verify(&cfg, rep).unwrap().all_pass());
            // A relabelled representation is still admissible.
            let perm: Vec<usize> = (0..n).rev().collect();
            let moved = Representation {
                assignments: rep.assignments.iter().map(|a| {
                    let class = a.class.permuted(&perm);
                    CurveAssignment { curve: a.curve, form: classify_normal_form(&class), class }
                }).collect(),
                torsion: rep.torsion,
            };
            prop_assert!(verify(&cfg, &moved).unwrap().all_pass());
        }
    }

    #[test]
    fn sigma_verdict_matches_its_range(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg: CurveConfig = families::random_config(&mut rng, 6);
        if let Ok(r) = cfg.sigma_classify() {
            let n = r.b2 as i64;
            use vii_lattice::config::SigmaVerdict::*;
            let ok = match r.verdict {
                EnokiClass => r.sigma == 2 * n,
                Intermediate => 2 * n < r.sigma && r.sigma < 3 * n,
                InoueHirzebruch { .. } => r.sigma == 3 * n,
                OutOfRange => r.sigma < 2 * n || r.sigma > 3 * n,
            };
            prop_assert!(ok, "{:?}", r);
        }
    }
}

#[test]
fn definite_lattice_configs_have_effective_nac() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut seen = 0;
    for k in 0..200 {
        let n = 2 + k % 5;
        let Some(cfg) = families::random_lattice_config(&mut rng, n, n, 50) else { continue };
        let definite = is_negative_definite(&cfg.intersection_matrix().unwrap()).unwrap() == Definiteness::Definite;
        if let (true, NacOutcome::Solved(s)) = (definite, solve_nac(&cfg, 1).unwrap()) {
            assert!(s.coeffs.iter().all(|k| *k >= BigRational::from_integer(0.into())));
            seen += 1;
        }
    }
    assert!(seen > 50, "{seen}");
}
