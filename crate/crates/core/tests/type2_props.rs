use icobr_core::channel::ObrcGainsII;
use icobr_core::polytope::project_to_rate_plane;
use icobr_core::type2::*;
use icobr_core::*;
use proptest::prelude::*;

fn mixed_ic() -> impl Strategy<Value = IcParams> {
    (0.05f64..0.99, 0.3f64..3.0, 1.0f64..30.0, 1.0f64..30.0).prop_map(|(a12, a21, p1, p2)| IcParams::new(a12, a21, p1, p2))
}

/// Gains with `c1 >= c2`.
fn gains() -> impl Strategy<Value = ObrcGainsII> {
    (0.2f64..5.0, 0.2f64..5.0, 0.2f64..5.0, 0.0f64..1.0, 1.0f64..30.0).prop_map(|(b1, b2, c1, f, p)| ObrcGainsII {
        b1,
        b2,
        c1,
        c2: c1 * f,
        p1r: p,
        p2r: p,
        pr: p,
    })
}

fn split() -> impl Strategy<Value = (f64, f64)> {
    (0.05f64..2.0, 0.05f64..2.0)
}

fn best_over_xi(ic: &IcParams, o: &ObrcTypeII, scheme: SchemeII) -> f64 {
    (0..=2000)
        .map(|i| scheme_objective(scheme, &terms(ic, o, &RelayPowerSplit::full(i as f64 / 2000.0))))
        .fold(f64::NEG_INFINITY, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn achievable_below_outer(ic in mixed_ic(), g in gains(), (em, eb) in split()) {
        let o = g.with_allocation(em, eb);
        let outer = outer_sumrate_t2(&ic, &o).unwrap();
        prop_assert!(!outer.heuristic);
        for s in [SchemeII::DfSr, SchemeII::DfSrIf] {
            let v = best_over_xi(&ic, &o, s);
            prop_assert!(v <= outer.value + 1e-9, "{s:?}: {v} > {}", outer.value);
        }
        if let Ok(d) = df_sumcap_t2(&ic, &o) {
            prop_assert!(d.value <= outer.value + 1e-9);
        }
        if let Ok((r, _)) = cf_region_t2(&ic, &o) {
            prop_assert!(r.sum_rate() <= outer.value + 1e-9);
        }
    }

    #[test]
    fn signal_relaying_sum_capacity(a12 in 0.05f64..0.99, p in 1.0f64..30.0, extra in 0.0f64..2.0, c1 in 0.2f64..4.0, f in 0.0f64..1.0, (em, eb) in split(), b2 in 0.2f64..5.0) {
        let a21 = ((1.0 + p) / (1.0 + a12 * a12 * p)).sqrt() + extra;
        let ic = IcParams::new(a12, a21, p, p);
        // Pick b1 so the source-1 uplink carries the whole relay-to-destination-1 rate.
        let need = eb * cap(c1 * c1 * p).unwrap();
        let s1 = ((2.0 * need / em).exp2() - 1.0) * (1.0 + f);
        let g = ObrcGainsII { b1: (s1 / p).sqrt(), b2, c1, c2: c1 * f, p1r: p, p2r: p, pr: p };
        let o = g.with_allocation(em, eb);
        let d = df_sumcap_t2(&ic, &o).unwrap();
        prop_assert_eq!(d.regime, DfRegime::Prop8);
        let outer = outer_sumrate_t2(&ic, &o).unwrap();
        prop_assert!((d.value - outer.value).abs() < 1e-6, "{} vs {}", d.value, outer.value);
    }

    #[test]
    fn forwarding_facets_match_elimination(ic in mixed_ic(), g in gains(), (em, eb) in split(), xi in 0.0f64..1.0) {
        let o = g.with_allocation(em, eb);
        let sp = RelayPowerSplit::full(xi);
        let a = prop10_region_t2(&ic, &o, &sp).unwrap();
        let b = project_to_rate_plane(&prop10_system_t2(&ic, &o, &sp).unwrap(), &FWD_R1, &FWD_R2).unwrap();
        prop_assert!(a.vertex_distance(&b) < 1e-9, "{a:?} vs {b:?}");
        prop_assert!((a.sum_rate() - prop10_sumrate(&terms(&ic, &o, &sp))).abs() < 1e-9);
    }

    #[test]
    fn signal_relaying_inside_forwarding(ic in mixed_ic(), g in gains(), (em, eb) in split(), xi in 0.0f64..1.0) {
        let o = g.with_allocation(em, eb);
        let sp = RelayPowerSplit::full(xi);
        let df = df_region_t2(&ic, &o, &sp).unwrap();
        let fw = prop10_region_t2(&ic, &o, &sp).unwrap();
        for v in df.vertices() {
            prop_assert!(fw.contains(*v, 1e-9), "{v:?} not in {fw:?}");
        }
    }

    #[test]
    fn compress_forward_approaches_strong_region(a in 1.0f64..3.0, p in 2.0f64..30.0, b in 0.3f64..3.0) {
        let ic = IcParams::symmetric(a, p);
        let gap = |c: f64| {
            let o = ObrcGainsII { b1: b, b2: b, c1: c, c2: c, p1r: p, p2r: p, pr: p }.with_allocation(1.0, 1.0);
            strong_region_t2(&ic, &o).unwrap().0.sum_rate() - cf_region_t2(&ic, &o).unwrap().0.sum_rate()
        };
        let (g1, g2, g3) = (gap(2.0), gap(20.0), gap(2000.0));
        prop_assert!(g1 >= g2 - 1e-12 && g2 >= g3 - 1e-12 && g3 >= -1e-12 && g3 < 1e-3, "{g1} {g2} {g3}");
    }

    #[test]
    fn xi_search_matches_fine_grid(ic in mixed_ic(), g in gains(), (em, eb) in split()) {
        let o = g.with_allocation(em, eb);
        let found = outer_sumrate_t2(&ic, &o).unwrap();
        let grid = (0..=1_000_000u32)
            .map(|i| outer_objective(&terms(&ic, &o, &RelayPowerSplit::full(i as f64 * 1e-6))))
            .fold(f64::NEG_INFINITY, f64::max);
        // The search may land on a kink between grid points, so it can only do better.
        prop_assert!(found.value >= grid - 1e-6, "{} vs {grid}", found.value);
        let at = outer_objective(&terms(&ic, &o, &RelayPowerSplit::full(found.xi_star)));
        prop_assert_eq!(at, found.value);
    }
}
