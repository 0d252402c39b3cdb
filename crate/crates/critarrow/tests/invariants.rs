//! Randomized structural invariants not already pinned by the acceptance
//! suite: span invariance under permutation and rescaling, arrow validation
//! for interior elements, the closed-form terminal Hilbert basis at larger
//! parameters, and determinism of full reports.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use critarrow::{
    analyze, delta_cone, terminal_hilbert_basis, validate_arrow, Limits, Rat, SimplicialCone,
    Vector,
};

fn v(e: &[i64]) -> Vector {
    Vector::from_ints(e)
}

fn rat(n: i64, d: i64) -> Rat {
    critarrow::exact::rat(n, d)
}

#[test]
fn span_dims_invariant_under_permutation_and_rescaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    for _ in 0..50 {
        let d = rng.gen_range(2..=4);
        let n = rng.gen_range(1..=5);
        let vecs: Vec<Vector> = (0..n)
            .map(|_| {
                Vector::from_ints(&(0..d).map(|_| rng.gen_range(-4i64..=4)).collect::<Vec<_>>())
            })
            .collect();
        let (base, _, _) = critarrow::span_dims(&vecs, &[]).unwrap();
        let mut shuffled: Vec<Vector> = vecs.clone();
        for k in (1..shuffled.len()).rev() {
            shuffled.swap(k, rng.gen_range(0..=k));
        }
        let scaled: Vec<Vector> = shuffled
            .iter()
            .map(|u| {
                let num = *[-3i64, -2, -1, 1, 2, 3].get(rng.gen_range(0..6)).unwrap();
                let den = rng.gen_range(1i64..=4);
                u.scale(&rat(num, den))
            })
            .collect();
        let (permuted, _, _) = critarrow::span_dims(&scaled, &[]).unwrap();
        assert_eq!(base, permuted);
    }
}

#[test]
fn every_profile_vector_yields_a_valid_arrow_for_interior_w() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x22);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 40 {
        attempts += 1;
        assert!(attempts < 4000, "generation stalled");
        let rays: Vec<Vector> = (0..3)
            .map(|_| {
                Vector::from_ints(&(0..3).map(|_| rng.gen_range(-2i64..=3)).collect::<Vec<_>>())
            })
            .collect();
        if rays.iter().any(Vector::is_zero) {
            continue;
        }
        let Ok(cone) = SimplicialCone::from_rays(&rays) else {
            continue;
        };
        // strictly positive combination keeps w interior
        let mut w = Vector::zero(3);
        for g in cone.generators() {
            w = w.add(&g.scale(&rat(rng.gen_range(1i64..=2), 1)));
        }
        let Ok(report) = analyze(&cone, &w, &limits) else {
            continue;
        };
        if !report.crit_nonempty() {
            continue;
        }
        for profile in &report.profiles {
            let dc = delta_cone(&cone, &w, profile.index).unwrap();
            for u in &profile.vectors {
                let arrow = dc.reconstruct_arrow(u).unwrap_or_else(|e| {
                    panic!(
                        "reconstruct failed for {u:?} at index {}: {e}",
                        profile.index
                    )
                });
                assert_eq!(&arrow.vector, u);
                assert!(
                    validate_arrow(&cone, &w, &arrow, &limits).unwrap(),
                    "arrow from {u:?} at index {} failed validation (cone {:?}, w {w:?})",
                    profile.index,
                    cone.generators(),
                );
            }
        }
        checked += 1;
    }
}

#[test]
fn terminal_formula_matches_enumeration_up_to_thirty() {
    let limits = Limits::default();
    for q in 2u64..=30 {
        for p in 1..q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let cone =
                SimplicialCone::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, p as i64, q as i64]])
                    .unwrap();
            assert_eq!(
                terminal_hilbert_basis(p, q).unwrap(),
                cone.hilbert_basis(&limits).unwrap().elements,
                "(p,q)=({p},{q})"
            );
        }
    }
}

#[test]
fn analysis_reports_are_deterministic() {
    let limits = Limits::default();
    let cone = SimplicialCone::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 2, 5]]).unwrap();
    let w = v(&[1, 1, 2]);
    let a = analyze(&cone, &w, &limits).unwrap();
    let b = analyze(&cone, &w, &limits).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn report_arithmetic_holds() {
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x33);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 60 {
        attempts += 1;
        assert!(attempts < 6000, "generation stalled");
        let rays: Vec<Vector> = (0..3)
            .map(|_| {
                Vector::from_ints(&(0..3).map(|_| rng.gen_range(-2i64..=3)).collect::<Vec<_>>())
            })
            .collect();
        if rays.iter().any(Vector::is_zero) {
            continue;
        }
        let Ok(cone) = SimplicialCone::from_rays(&rays) else {
            continue;
        };
        let mut w = Vector::zero(3);
        for g in cone.generators() {
            w = w.add(&g.scale(&rat(rng.gen_range(0i64..=2), 1)));
        }
        if w.is_zero() {
            continue;
        }
        let Ok(report) = analyze(&cone, &w, &limits) else {
            continue;
        };
        assert_eq!(
            report.dim_tau,
            report.dim_mu - (report.dim_vw - report.dim_mu_perp_cap_vw)
        );
        assert_eq!(report.center_dim + report.dim_tau, report.dim);
        assert!(report.dim_tau >= 1 && report.dim_tau <= report.dim_mu);
        for p in &report.profiles {
            assert!(p.c_min > rat(0, 1));
            for u in &p.vectors {
                assert_eq!(u.dot(&w), rat(0, 1), "crit vector off w-perp");
            }
        }
        checked += 1;
    }
}
