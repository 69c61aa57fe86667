use icobr_core::optimize::{maximize_1d, search_simplex, SearchSpec};
use icobr_core::polytope::{hull_union, project_by_support, project_to_rate_plane};
use icobr_core::*;
use proptest::prelude::*;

const VARS: [&str; 4] = ["x1", "x2", "x3", "x4"];

/// Random bounded system on four nonnegative variables; the origin is feasible.
fn system() -> impl Strategy<Value = HalfSpaceSystem> {
    let row = (prop::collection::vec(-1.0f64..2.0, 4), 0.1f64..5.0);
    (prop::collection::vec(row, 3..=7), 1.0f64..6.0).prop_map(|(rows, total)| {
        let mut s = HalfSpaceSystem::new(&VARS);
        for (coef, b) in rows {
            let combo: Vec<(&str, f64)> = VARS.iter().copied().zip(coef).collect();
            s.push(&combo, b).unwrap();
        }
        s.push(&VARS.map(|v| (v, 1.0)), total).unwrap();
        s
    })
}

const R1: [(&str, f64); 2] = [("x1", 1.0), ("x2", 0.5)];
const R2: [(&str, f64); 2] = [("x3", 1.0), ("x4", 1.0)];

fn directions() -> impl Iterator<Item = (f64, f64)> {
    (0..100).map(|k| {
        let t = k as f64 * core::f64::consts::TAU / 100.0;
        (t.cos(), t.sin())
    })
}

fn lp_support(s: &HalfSpaceSystem, al: f64, be: f64) -> f64 {
    let obj = [("x1", al), ("x2", 0.5 * al), ("x3", be), ("x4", be)];
    s.support_value(&obj).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn elimination_matches_lp_support(s in system()) {
        let r = project_to_rate_plane(&s, &R1, &R2).unwrap();
        for (al, be) in directions() {
            let want = lp_support(&s, al, be);
            // The projection is clipped to the quadrant, which the nonnegative variables already imply.
            prop_assert!((r.support(al, be) - want).abs() < 1e-7, "dir ({al}, {be}): {} vs {want}", r.support(al, be));
        }
    }

    #[test]
    fn support_projection_matches_elimination(s in system()) {
        let a = project_to_rate_plane(&s, &R1, &R2).unwrap();
        let b = project_by_support(&s, &R1, &R2).unwrap();
        prop_assert!(a.vertex_distance(&b) < 1e-7, "{a:?} vs {b:?}");
    }

    #[test]
    fn elimination_keeps_feasible_points(s in system(), w in prop::collection::vec(0.0f64..1.0, 4)) {
        // Scale a random direction into the feasible set, then check its image survives.
        let mut x: Vec<f64> = w.clone();
        while !s.contains(&x, 1e-12) {
            x.iter_mut().for_each(|v| *v *= 0.5);
        }
        let e = polytope::fm_eliminate(&s, "x4").unwrap();
        prop_assert!(e.contains(&x[..3], 1e-9));
    }

    #[test]
    fn vertices_match_brute_force(hp in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, 0.1f64..3.0), 1..6)) {
        let mut all: Vec<HalfPlane> = hp.iter().map(|&(a, b, g)| HalfPlane::new(a, b, g)).collect();
        all.push(HalfPlane::new(1.0, 1.0, 4.0));
        let r = RateRegion2D::from_halfplanes(&all).unwrap();
        all.push(HalfPlane::new(-1.0, 0.0, 0.0));
        all.push(HalfPlane::new(0.0, -1.0, 0.0));
        for v in r.vertices() {
            prop_assert!(all.iter().all(|h| h.slack(*v) > -1e-9));
            let tight = all.iter().filter(|h| h.slack(*v).abs() < 1e-7).count();
            prop_assert!(tight >= 2, "vertex {v:?} is tight on {tight} constraints");
        }
        // Grid points of the feasible set are inside, infeasible ones are outside.
        for i in 0..=20 {
            for j in 0..=20 {
                let p = [i as f64 * 0.2, j as f64 * 0.2];
                let inside = all.iter().all(|h| h.slack(p) >= 0.0);
                if all.iter().all(|h| h.slack(p).abs() > 1e-6) {
                    prop_assert_eq!(r.contains(p, 1e-9), inside);
                }
            }
        }
    }

    #[test]
    fn hull_union_commutes_and_is_idempotent(
        a in prop::collection::vec((0.0f64..3.0, 0.0f64..3.0), 1..6),
        b in prop::collection::vec((0.0f64..3.0, 0.0f64..3.0), 1..6),
    ) {
        let to = |v: &[(f64, f64)]| RateRegion2D::from_vertices(&v.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()).unwrap();
        let (ra, rb) = (to(&a), to(&b));
        let ab = hull_union(&[ra.clone(), rb.clone()]).unwrap();
        let ba = hull_union(&[rb, ra.clone()]).unwrap();
        prop_assert!(ab.vertex_distance(&ba) < 1e-12);
        prop_assert!(hull_union(&[ra.clone(), ra.clone()]).unwrap().vertex_distance(&ra) < 1e-12);
        prop_assert!(hull_union(&[ab.clone(), ra]).unwrap().vertex_distance(&ab) < 1e-12);
    }

    #[test]
    fn comprehensive_region_is_monotone(hp in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0, 0.5f64..3.0), 1..5), t in 0.0f64..1.0) {
        let mut all: Vec<HalfPlane> = hp.iter().map(|&(a, b, g)| HalfPlane::new(a, b, g)).collect();
        all.push(HalfPlane::new(1.0, 1.0, 4.0));
        let r = RateRegion2D::from_halfplanes(&all).unwrap();
        for v in r.vertices() {
            prop_assert!(r.contains([v[0] * t, v[1]], 1e-9) && r.contains([v[0], v[1] * t], 1e-9));
        }
    }

    #[test]
    fn cap_is_concave_and_increasing(x in 0.0f64..1e4, y in 0.0f64..1e4) {
        let m = cap(0.5 * (x + y)).unwrap();
        prop_assert!(m + 1e-12 >= 0.5 * (cap(x).unwrap() + cap(y).unwrap()));
        prop_assert!((cap(x).unwrap() <= cap(y).unwrap()) == (x <= y) || x == y);
    }

    #[test]
    fn db_round_trip(d in -60.0f64..60.0) {
        let back = linear_to_db(db_to_linear(d).unwrap()).unwrap();
        prop_assert!((back - d).abs() < 1e-9);
    }

    #[test]
    fn validation_flags_negative_fields(a in -2.0f64..2.0, p in -5.0f64..20.0) {
        use icobr_core::channel::Validate;
        let ic = IcParams::new(a, 1.0, p, 10.0);
        let v = ic.violations();
        prop_assert_eq!(v.iter().any(|x| x.field == "a12"), a < 0.0);
        prop_assert_eq!(v.iter().any(|x| x.field == "P1"), p < 0.0);
        prop_assert_eq!(ic.validate().is_ok(), a >= 0.0 && p >= 0.0);
    }

    #[test]
    fn search_beats_its_grid(c0 in 0.0f64..1.0, k in 1.0f64..20.0) {
        let f = |x: f64| -(x - c0).abs() * k + (3.0 * x).sin();
        let spec = SearchSpec::new(0.0, 1.0, 0.01, 1e-9);
        let (_, v) = maximize_1d(f, &spec).unwrap();
        let grid = (0..=100).map(|i| f(i as f64 * 0.01)).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(v >= grid);
    }

    #[test]
    fn simplex_search_is_permutation_equivariant(w in prop::collection::vec(0.1f64..2.0, 3)) {
        let spec = SearchSpec::new(0.0, 1.0, 0.05, 1e-10);
        let f = |x: &[f64]| (0..3).map(|i| w[i] * (1.0 + 4.0 * x[i]).ln()).sum::<f64>();
        let g = |x: &[f64]| f(&[x[1], x[2], x[0]]);
        let (xf, vf) = search_simplex(f, 3, 1.0, &spec).unwrap();
        let (xg, vg) = search_simplex(g, 3, 1.0, &spec).unwrap();
        prop_assert!((vf - vg).abs() < 1e-9, "{vf} {vg}");
        prop_assert!((xf[0] - xg[1]).abs() < 1e-4 && (xf[1] - xg[2]).abs() < 1e-4 && (xf[2] - xg[0]).abs() < 1e-4, "{xf:?} {xg:?}");
    }

    #[test]
    fn simplex_search_beats_its_lattice(w in prop::collection::vec(0.1f64..2.0, 3)) {
        let spec = SearchSpec::new(0.0, 1.0, 0.05, 1e-9);
        let f = |x: &[f64]| (x[0] * w[0]).min(x[1] * w[1]).min(x[2] * w[2]);
        let (_, v) = search_simplex(f, 3, 1.0, &spec).unwrap();
        let mut lattice = f64::NEG_INFINITY;
        for i in 0..=20 {
            for j in 0..=20 - i {
                let x = [i as f64 * 0.05, j as f64 * 0.05, (20 - i - j) as f64 * 0.05];
                lattice = lattice.max(f(&x));
            }
        }
        prop_assert!(v >= lattice - 1e-15);
    }
}
