//! Randomized invariants over well-conditioned gadgets.

mod common;

use std::f64::consts::PI;

use common::{any_params, interior_tongue, random_division, rng, tilted, tol, tongue_with_ends, untilted};
use origon_core::conventional::{build_conventional, BuildOptions};
use origon_core::critical::{check_critical_theorems, critical_angles, critical_angles_geometric};
use origon_core::division::{build_division, division_checks};
use origon_core::fold::{from_fold, to_fold};
use origon_core::geom::{angle_between, circumcenter, intersect, signed_angle};
use origon_core::improved::{
    build_improved, ear_angle_checks, improved_geometry, measured_slack, slack, ImprovedOptions, TiltedAssignment,
};
use origon_core::interference::{
    downward_compatibility, inner_reach_polynomial, interference, kappa_out_measured, InnerBranch,
};
use origon_core::params::derive;
use origon_core::validator::{
    circum_shift, constructible_by_tongue_angle, constructible_by_tongue_offset, kawasaki_check,
};
use origon_core::{Point2, Segment, Side};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point2> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn segment_intersection_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        let t = tol();
        let one = intersect(Segment::new(a, b).into(), Segment::new(c, d).into(), &t);
        let two = intersect(Segment::new(c, d).into(), Segment::new(a, b).into(), &t);
        match (one, two) {
            (Ok(Some(x)), Ok(Some(y))) => prop_assert!(x.dist(y) < 1e-9),
            (Ok(None), Ok(None)) | (Err(_), Err(_)) => {}
            // Hits within the length tolerance of an end may be seen from one side only.
            (Ok(Some(x)), Ok(None)) | (Ok(None), Ok(Some(x))) => {
                let near_end = [a, b, c, d].iter().any(|p| p.dist(x) < 1e-6);
                prop_assert!(near_end);
            }
            (l, r) => prop_assert!(false, "{l:?} vs {r:?}"),
        }
    }

    #[test]
    fn circumcenter_ignores_vertex_order(a in point(), b in point(), c in point()) {
        prop_assume!((b - a).cross(c - a).abs() > 1e-3);
        let t = tol();
        let o = circumcenter(a, b, c, &t).unwrap();
        for (p, q, r) in [(b, c, a), (c, a, b), (b, a, c), (a, c, b), (c, b, a)] {
            let other = circumcenter(p, q, r, &t).unwrap();
            prop_assert!(o.dist(other) <= 1e-9 * o.norm().max(1.0) * 1e3);
        }
        let (ra, rb, rc) = (o.dist(a), o.dist(b), o.dist(c));
        prop_assert!(close(ra, rb, 1e-8) && close(ra, rc, 1e-8));
    }

    #[test]
    fn signed_angle_is_antisymmetric(at in point(), u in point(), v in point()) {
        prop_assume!(u.dist(at) > 1e-6 && v.dist(at) > 1e-6);
        let fwd = signed_angle(at, u, v).unwrap();
        let back = signed_angle(at, v, u).unwrap();
        // The half turn maps to itself.
        if (fwd.abs() - PI).abs() > 1e-12 {
            prop_assert!((fwd + back).abs() < 1e-12);
        }
        prop_assert!((fwd.abs() - angle_between(at, u, v)).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn critical_angles_agree_with_construction(seed in any::<u64>()) {
        let p = any_params(&mut rng(seed));
        let closed = critical_angles(&p, &tol()).unwrap();
        let drawn = critical_angles_geometric(&p, &tol()).unwrap().critical_angle;
        for s in Side::BOTH {
            prop_assert!((closed[s] - drawn[s]).abs() < 1e-9, "{s}: {} vs {}", closed[s], drawn[s]);
        }
        let mirrored = critical_angles(&p.mirrored(), &tol()).unwrap();
        prop_assert!((mirrored.l - closed.r).abs() < 1e-12 && (mirrored.r - closed.l).abs() < 1e-12);
    }

    #[test]
    fn critical_theorems_hold(seed in any::<u64>()) {
        let p = any_params(&mut rng(seed));
        let r = check_critical_theorems(&p, &tol()).unwrap();
        prop_assert!(r.passed(), "{r}");
    }

    #[test]
    fn tongue_angle_and_offset_verdicts_agree(seed in any::<u64>(), u in 0.0..1.0f64) {
        let p = any_params(&mut rng(seed));
        let d = derive(&p, &tol()).unwrap();
        let phi = u * d.gap_angle;
        let by_angle = constructible_by_tongue_angle(&p, phi, &tol()).unwrap();
        let by_offset = constructible_by_tongue_offset(&p, d.gap_share.l - phi, &tol()).unwrap();
        for s in Side::BOTH {
            // The two margins measure different angles; skip the knife edge.
            if by_angle[s].margin.abs() > 1e-7 && by_offset[s].margin.abs() > 1e-7 {
                prop_assert_eq!(by_angle[s].pass, by_offset[s].pass, "{} side at phi {}", s, phi);
            }
        }
    }

    #[test]
    fn gap_shares_match_the_drawing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = any_params(&mut r);
        let d = derive(&p, &tol()).unwrap();
        prop_assert!((d.gap_share.l + d.gap_share.r - d.gap_angle).abs() < 1e-12);
        let g = improved_geometry(&p, interior_tongue(&p, &mut r), &tol()).unwrap();
        for s in Side::BOTH {
            let drawn = angle_between(g.apex, g.corner[s], g.pivot);
            prop_assert!((drawn - d.gap_share[s]).abs() < 1e-9);
        }
        prop_assert!((g.pivot.dist(g.apex) / p.edge_length - d.apex_ratio).abs() < 1e-9);
    }

    #[test]
    fn slack_and_shift_sum_rules(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = any_params(&mut r);
        let d = derive(&p, &tol()).unwrap();
        let g = improved_geometry(&p, tongue_with_ends(&p, &mut r), &tol()).unwrap();
        let shift = [circum_shift(g.tongue_offset.l, d.apex_ratio), circum_shift(g.tongue_offset.r, d.apex_ratio)];
        prop_assert!((shift[0] + shift[1]).abs() < 1e-10);
        prop_assert!((g.tongue_offset.l + g.tongue_offset.r).abs() < 1e-10);
        let e = slack(&p, &g, &tol()).unwrap();
        let total = p.side_angle.l + p.side_angle.r + d.gap_angle / 2.0 - PI;
        prop_assert!((e.l + e.r - total).abs() < 1e-10);
        let m = measured_slack(&g);
        for s in Side::BOTH {
            if !g.critical[s] {
                prop_assert!((m[s] - e[s]).abs() < 1e-9, "{s}: {} vs {}", m[s], e[s]);
            }
        }
        let checks = ear_angle_checks(&p, &g, &tol()).unwrap();
        prop_assert!(checks.passed(), "{checks}");
    }

    #[test]
    fn outer_coefficient_matches_drawing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = any_params(&mut r);
        let phi = tongue_with_ends(&p, &mut r);
        let g = improved_geometry(&p, phi, &tol()).unwrap();
        let rep = interference(&p, phi, &tol()).unwrap();
        for s in Side::BOTH {
            let measured = kappa_out_measured(&p, &g, s, &tol()).unwrap();
            prop_assert!(close(rep.outer[s], measured, 1e-9));
        }
    }

    #[test]
    fn inner_polynomial_matches_across_ears(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = untilted(&mut r);
        let phi = interior_tongue(&p, &mut r);
        let rep = interference(&p, phi, &tol()).unwrap();
        if rep.inner_branch.l == InnerBranch::AcrossEars {
            if let Some(poly) = inner_reach_polynomial(&p, Side::L, phi) {
                prop_assert!(close(poly / (2.0 * rep.height_ratio), rep.inner.l, 1e-7));
            }
        }
    }

    #[test]
    fn improved_never_reaches_beyond_conventional(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = untilted(&mut r);
        let report = downward_compatibility(&p, tongue_with_ends(&p, &mut r), &tol()).unwrap();
        prop_assert!(report.passed(), "{report}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conventional_is_flat_foldable(seed in any::<u64>()) {
        let p = untilted(&mut rng(seed));
        let cp = build_conventional(&p, BuildOptions::default(), &tol()).unwrap().pattern;
        let k = kawasaki_check(&cp, &tol()).unwrap();
        prop_assert!(k.passed(), "{:?}", k.failures().collect::<Vec<_>>());
        prop_assert!(cp.pslg_violations(1e-9).is_empty());
    }

    #[test]
    fn improved_is_flat_foldable(seed in any::<u64>(), alternate in any::<bool>()) {
        let mut r = rng(seed);
        let p = if alternate { tilted(&mut r) } else { any_params(&mut r) };
        let variant = if alternate { TiltedAssignment::Alternate } else { TiltedAssignment::Primary };
        let phi = tongue_with_ends(&p, &mut r);
        let cp = build_improved(&p, phi, ImprovedOptions { variant, debug_lines: false }, &tol()).unwrap().pattern;
        let k = kawasaki_check(&cp, &tol()).unwrap();
        prop_assert!(k.passed(), "{:?}", k.failures().collect::<Vec<_>>());
        prop_assert!(cp.pslg_violations(1e-9).is_empty());
    }

    #[test]
    fn division_predicates_match_construction(seed in any::<u64>()) {
        let (p, spec) = random_division(&mut rng(seed));
        let div = build_division(&p, &spec, &tol()).unwrap();
        let checks = division_checks(&p, &spec, &div.geometry);
        prop_assert!(checks.passed(), "{checks}");
        let k = kawasaki_check(&div.pattern, &tol()).unwrap();
        prop_assert!(k.passed(), "{:?}", k.failures().collect::<Vec<_>>());
        prop_assert!(div.pattern.pslg_violations(1e-9).is_empty());
    }

    #[test]
    fn fold_round_trip_is_exact(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = any_params(&mut r);
        let cp = build_improved(&p, tongue_with_ends(&p, &mut r), ImprovedOptions::default(), &tol()).unwrap().pattern;
        let text = to_fold(&cp);
        let back = from_fold(&text).unwrap();
        prop_assert_eq!(&back, &cp);
        prop_assert_eq!(to_fold(&back), text);
    }
}
