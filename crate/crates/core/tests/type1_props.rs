use icobr_core::channel::ObrcGainsI;
use icobr_core::type1::*;
use icobr_core::*;
use proptest::prelude::*;

fn gains() -> impl Strategy<Value = ObrcGainsI> {
    (0.2f64..3.0, 0.2f64..3.0, 0.2f64..3.0, 0.2f64..3.0, 1.0f64..20.0).prop_map(|(b1, b2, c1, c2, p)| ObrcGainsI {
        b1,
        b2,
        c1,
        c2,
        p1r: p,
        p2r: p,
        pr1: p,
        pr2: p,
    })
}

fn allocation() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(0.0f64..1.0)
}

fn sum_combo() -> Vec<(&'static str, f64)> {
    R1_COMBO.iter().chain(R2_COMBO.iter()).copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn achievable_below_outer_symmetric_strong(a in 1.0f64..3.0, p in 1.0f64..30.0, g in gains(), eta in allocation()) {
        let ic = IcParams::symmetric(a, p);
        let o = g.with_allocation(eta);
        let outer = outer_sumrate_t1(&ic, &o);
        prop_assert!(!outer.heuristic);
        let (_, ach) = achievable_sumrate_t1(&ic, &o, 3).unwrap();
        prop_assert!(ach <= outer.value + 1e-9, "{ach} > {}", outer.value);
        for s in [SchemeI::Sr, SchemeI::SrIf] {
            prop_assert!(scheme_sumrate_closed_t1(&ic, &o, s) <= outer.value + 1e-9);
        }
    }

    #[test]
    fn bottleneck_region_is_translated_ic_region(a in 1.0f64..3.0, p in 1.0f64..30.0, g in gains(), eta in allocation()) {
        let ic = IcParams::symmetric(a, p);
        let o = g.with_allocation(eta);
        prop_assume!(classify_t1(&ic, &o).label == Regime::Bottleneck);
        let want = prop3_region(&strong_ic_region(&ic).unwrap(), &o).unwrap();
        let got = achievable_region_t1(&ic, &o, &PowerSplit::common_only(&ic)).unwrap();
        prop_assert!(got.vertex_distance(&want) < 1e-7, "{got:?} vs {want:?}");
    }

    #[test]
    fn excess_rate_capacity(a12 in 1.0f64..3.0, a21 in 0.5f64..3.0, p in 1.0f64..30.0, l1r in 0.0f64..3.0, lr2 in 0.0f64..3.0, d1 in 0.0f64..2.0, d2 in 0.0f64..2.0) {
        let ic = IcParams::new(a12, a21, p, p);
        // Unit capacity 1 per link, so the fractions are the link rates.
        let unit = ObrcGainsI { b1: 1.0, b2: 1.0, c1: 1.0, c2: 1.0, p1r: 3.0, p2r: 3.0, pr1: 3.0, pr2: 3.0 };
        let o = unit.with_allocation([l1r, lr2 + d2, l1r + d1, lr2]);
        let (region, case) = match prop4_region(&ic, &o) {
            Ok(r) => r,
            Err(e) => {
                prop_assert_eq!(e, Error::Ambiguous);
                return Ok(());
            }
        };
        let l = o.links();
        let d2 = cap(a12 * a12 * p + p).unwrap() + l.l1r + l.lr2;
        if case == Prop4Case::II {
            prop_assert!(region.sum_rate() <= d2 + 1e-12);
        }
        let v = forwarding_system(&ic, &o).unwrap().support_value(&sum_combo()).unwrap();
        prop_assert!((v - region.sum_rate()).abs() < 1e-6, "{v} vs {}", region.sum_rate());
    }

    #[test]
    fn index_swap_symmetry(a12 in 0.3f64..3.0, a21 in 0.3f64..3.0, p1 in 1.0f64..20.0, p2 in 1.0f64..20.0, g in gains(), eta in allocation()) {
        let ic = IcParams::new(a12, a21, p1, p2);
        let o = g.with_allocation(eta);
        let (_, s) = achievable_sumrate_t1(&ic, &o, 2).unwrap();
        let (_, t) = achievable_sumrate_t1(&ic.swapped(), &o.swapped(), 2).unwrap();
        prop_assert!((s - t).abs() < 1e-9);
        let r = achievable_region_t1(&ic, &o, &PowerSplit::common_only(&ic)).unwrap();
        let m = achievable_region_t1(&ic.swapped(), &o.swapped(), &PowerSplit::common_only(&ic.swapped())).unwrap();
        prop_assert!(r.mirrored().vertex_distance(&m) < 1e-7);
        prop_assert!((outer_sumrate_t1(&ic, &o).value - outer_sumrate_t1(&ic.swapped(), &o.swapped()).value).abs() < 1e-12);
    }

    #[test]
    fn more_bandwidth_never_hurts(a12 in 0.3f64..3.0, a21 in 0.3f64..3.0, g in gains(), eta in allocation(), k in 0usize..4, d in 0.0f64..1.0) {
        let ic = IcParams::new(a12, a21, 10.0, 10.0);
        let mut more = eta;
        more[k] += d;
        for s in [SchemeI::Sr, SchemeI::SrIf] {
            let lo = scheme_sumrate_t1(&ic, &g.with_allocation(eta), s).unwrap();
            let hi = scheme_sumrate_t1(&ic, &g.with_allocation(more), s).unwrap();
            prop_assert!(hi >= lo - 1e-9);
        }
        let lo = varbw_sumrate_t1(&ic, &g, 1.0, SchemeI::SrIf).unwrap().value;
        let hi = varbw_sumrate_t1(&ic, &g, 1.0 + d, SchemeI::SrIf).unwrap().value;
        prop_assert!(hi >= lo - 1e-9);
    }

    #[test]
    fn closed_form_matches_lp(a12 in 0.3f64..3.0, a21 in 0.3f64..3.0, p1 in 1.0f64..20.0, p2 in 1.0f64..20.0, g in gains(), eta in allocation()) {
        let ic = IcParams::new(a12, a21, p1, p2);
        let o = g.with_allocation(eta);
        for s in [SchemeI::Sr, SchemeI::SrIf] {
            let a = scheme_sumrate_t1(&ic, &o, s).unwrap();
            let b = scheme_sumrate_closed_t1(&ic, &o, s);
            prop_assert!((a - b).abs() < 1e-9, "{s:?}: {a} vs {b}");
        }
        prop_assert!(scheme_sumrate_closed_t1(&ic, &o, SchemeI::SrIf) >= scheme_sumrate_closed_t1(&ic, &o, SchemeI::Sr) - 1e-12);
    }

    #[test]
    fn support_hull_matches_elimination(a12 in 0.3f64..3.0, a21 in 0.3f64..3.0, g in gains(), eta in allocation()) {
        let ic = IcParams::new(a12, a21, 10.0, 10.0);
        let o = g.with_allocation(eta);
        let h = achievable_hull_t1(&ic, &o, 1).unwrap();
        let f = achievable_region_t1(&ic, &o, &PowerSplit::common_only(&ic)).unwrap();
        prop_assert!(h.vertex_distance(&f) < 1e-7);
    }

    #[test]
    fn varbw_below_outer_symmetric_strong(a in 1.0f64..3.0, g in gains()) {
        let ic = IcParams::symmetric(a, 10.0);
        let (ob, heuristic) = outer_varbw_t1(&ic, &g, 1.0).unwrap();
        prop_assert!(!heuristic);
        for s in [SchemeI::Sr, SchemeI::SrIf] {
            prop_assert!(varbw_sumrate_t1(&ic, &g, 1.0, s).unwrap().value <= ob.value + 1e-9);
        }
    }
}

#[test]
fn prop6_search_matches_closed_form() {
    let ic = IcParams::symmetric(2.0, 10.0);
    let g = ObrcGainsI { b1: 3.0, b2: 2.0, c1: 3.0, c2: 0.3f64.sqrt(), p1r: 10.0, p2r: 10.0, pr1: 10.0, pr2: 10.0 };
    let (eta, v) = prop6_alloc(&ic, &g, 1.0).unwrap();
    let spec = optimize::SearchSpec::new(0.0, 1.0, 0.05, 1e-10);
    let found = sr_allocation_search(&ic, &g, 1.0, &spec).unwrap();
    assert!((found.value - v).abs() < 1e-6);
    for (a, b) in found.eta.iter().zip(eta) {
        assert!((a - b).abs() < 1e-3, "{:?}", found.eta);
    }
}
