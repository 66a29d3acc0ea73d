//! Named subgroups, their verification suites, and level-36 classification.

mod classify;
mod named;
mod prop25;
mod scan;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use crate::report::{Report, Step};
pub use classify::{
    classify_mod36, full_commutator_order_36, is_serre_obstructed, Classification, Classifier, ImageData, Mod36Class,
    Obstruction,
};
pub use named::{
    canonical_subgroups, epsilon, h4p, h4pp, h6p, h9p, in_n, n_by_equation, unique_index6_normal, Label, NamedSubgroup,
    Theta,
};
pub use prop25::{invariant_subspaces, section_table, verify_prop25_steps};
pub use scan::{goursat_scan_36, s3_datum_generators, ScanReport, Survivor};

use crate::error::Result;
use crate::groups::{
    are_conjugate, gl2, goursat_decompose, goursat_fiber, maximal_subgroups_detsurj, normal_subgroups, preimage,
    FinGroup, GoursatDatum, Pair, DEFAULT_NORMAL_BOUND,
};
use crate::modring::{gl2_elements, gl2_order, Mat2};
use crate::par::Exec;

/// Outcome of the cyclic-quotient commutator check over one pair of levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFiberCheck {
    pub levels: (u32, u32),
    pub products: usize,
    pub failures: usize,
}

/// For every fibered product `GL2(Z/aZ) x_Q GL2(Z/bZ)` with `Q` cyclic,
/// compares `[H, H]` with `[G0, G0] x [G1, G1]`.
pub fn cyclic_fiber_commutators(a: u32, b: u32) -> Result<CyclicFiberCheck> {
    let (g0, g1) = (gl2(a), gl2(b));
    let target = g0.commutator_subgroup().order() * g1.commutator_subgroup().order();
    let cyclic_quotients = |g: &FinGroup<Mat2>| -> Result<Vec<_>> {
        let mut out = Vec::new();
        for n in normal_subgroups(g, DEFAULT_NORMAL_BOUND)? {
            let (q, proj) = crate::groups::quotient(g, &n)?;
            if q.is_cyclic() {
                out.push((q, proj));
            }
        }
        Ok(out)
    };
    let (c0, c1) = (cyclic_quotients(&g0)?, cyclic_quotients(&g1)?);
    let mut check = CyclicFiberCheck {
        levels: (a, b),
        products: 0,
        failures: 0,
    };
    for (q0, p0) in &c0 {
        for (q1, p1) in &c1 {
            if q0.order() != q1.order() {
                continue;
            }
            for phi in q0.isomorphisms(q1, None) {
                let datum = GoursatDatum::new(p0.then(q1.clone(), &phi)?, p1.clone())?;
                let h = goursat_fiber(&datum);
                check.products += 1;
                if h.commutator_subgroup().order() != target {
                    check.failures += 1;
                }
            }
        }
    }
    Ok(check)
}

/// H6' as a subgroup of GL2(Z/2Z) x GL2(Z/3Z).
pub fn h6p_as_pairs(theta: &Theta) -> FinGroup<Pair<Mat2, Mat2>> {
    let elems: Vec<Pair<Mat2, Mat2>> = h6p(theta)
        .elements()
        .iter()
        .map(|g| {
            let (a, b) = g.crt_split(2, 3).expect("coprime");
            Pair(a, b)
        })
        .collect();
    FinGroup::from_elements(Pair(Mat2::identity(2), Mat2::identity(3)), &elems)
}

fn crt_checks(r: &mut Report, samples: usize) {
    let anchor = "Chinese Remainder Theorem identification";
    let all6 = gl2_elements(6);
    let mut ok = true;
    for a in &all6 {
        let (a2, a3) = a.crt_split(2, 3).expect("coprime");
        ok &= Mat2::crt_join(&a2, &a3).ok() == Some(*a) && a2.is_invertible() && a3.is_invertible();
        for b in &all6 {
            let (b2, b3) = b.crt_split(2, 3).expect("coprime");
            let (c2, c3) = a.mul_unchecked(b).crt_split(2, 3).expect("coprime");
            ok &= c2 == a2.mul_unchecked(&b2) && c3 == a3.mul_unchecked(&b3);
        }
    }
    let bijective = all6.len() as u64 == gl2_order(2) * gl2_order(3);
    r.check(
        "groups.crt.mod6",
        anchor,
        ok && bijective,
        format!("exhaustive over {}^2 pairs", all6.len()),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let mut random = || {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..36));
        Mat2::new(36, e).expect("small entries")
    };
    let mut ok = true;
    for _ in 0..samples {
        let (a, b) = (random(), random());
        let (a4, a9) = a.crt_split(4, 9).expect("coprime");
        let (b4, b9) = b.crt_split(4, 9).expect("coprime");
        let (c4, c9) = a.mul_unchecked(&b).crt_split(4, 9).expect("coprime");
        ok &= Mat2::crt_join(&a4, &a9).ok() == Some(a)
            && c4 == a4.mul_unchecked(&b4)
            && c9 == a9.mul_unchecked(&b9)
            && a.is_invertible() == (a4.is_invertible() && a9.is_invertible());
    }
    r.check("groups.crt.mod36", anchor, ok, format!("{samples} random pairs"));
}

/// Finite group-theoretic claims: the index-6 normal subgroup, theta, the
/// level-36 order, CRT, H6', commutators of cyclic fibered products, the
/// named groups and the maximal subgroups for small primes.
pub fn verify_groups_suite(exec: Exec) -> Result<Report> {
    let mut r = Report::new();
    match unique_index6_normal() {
        Ok(n) => r.check(
            "groups.n.unique",
            "exactly one index-6 normal subgroup of GL2(Z/3Z)",
            true,
            format!("order={} equals the defining set", n.group.order()),
        ),
        Err(e) => r.check(
            "groups.n.unique",
            "exactly one index-6 normal subgroup of GL2(Z/3Z)",
            false,
            e.to_string(),
        ),
    };
    let theta = Theta::new()?;
    r.check(
        "groups.theta",
        "exact sequence N -> GL2(Z/3Z) -> GL2(Z/2Z)",
        theta.hom.is_surjective() && theta.hom.kernel() == n_by_equation(),
        format!(
            "image order={} kernel order={}",
            theta.hom.image().order(),
            theta.hom.kernel().order()
        ),
    );

    let g36 = gl2(36);
    r.check(
        "groups.gl2-36.order",
        "order of GL2(Z/36Z)",
        g36.order() == 373248 && g36.order() == gl2(4).order() * gl2(9).order(),
        format!("closure={} product={}", g36.order(), gl2(4).order() * gl2(9).order()),
    );
    crt_checks(&mut r, 10_000);

    let anchor = "H6' as the graph of theta";
    let pairs = h6p_as_pairs(&theta);
    let (g2, g3) = (gl2(2), gl2(3));
    let h6 = h6p(&theta);
    r.check(
        "groups.h6.order",
        anchor,
        h6.order() == 48 && pairs.order() == 48,
        format!("order={}", h6.order()),
    );
    r.check(
        "groups.h6.projections",
        anchor,
        h6.project(2)? == g2 && h6.project(3)? == g3 && h6.det_surjective(),
        "onto GL2(Z/2Z), onto GL2(Z/3Z), det onto (Z/6Z)^x",
    );
    let datum = goursat_decompose(&pairs, &g2, &g3)?;
    r.check(
        "groups.h6.goursat",
        anchor,
        datum.q.order() == 6 && datum.psi0.kernel().order() == 1 && goursat_fiber(&datum) == pairs,
        format!("|Q|={} psi0 injective, fiber recovers H6'", datum.q.order()),
    );
    let inner = pairs.commutator_subgroup().order();
    let outer = g2.commutator_subgroup().order() * g3.commutator_subgroup().order();
    r.check(
        "groups.h6.commutator",
        "non-cyclic boundary case of the commutator lemma",
        inner == 24 && outer == 72,
        format!("|[H6',H6']|={inner} < {outer}"),
    );

    for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 4)] {
        let c = cyclic_fiber_commutators(a, b)?;
        r.check(
            &format!("groups.cyclic-fiber.{a}x{b}"),
            "equality of commutator subgroups for cyclic quotients",
            c.failures == 0 && c.products > 0,
            format!("products={} failures={}", c.products, c.failures),
        );
    }

    match canonical_subgroups() {
        Ok(subs) => {
            let orders: Vec<String> = subs
                .iter()
                .map(|s| format!("{}:{}", s.name(), s.group.order()))
                .collect();
            r.check("groups.canonical", "named subgroups", true, orders.join(" "));
            let h9 = h9p();
            let g9 = gl2(9).order();
            let detail = if h9.order() == g9 {
                format!("|H9'|={} = |GL2(Z/9Z)|; the listed generators close to the full group, so X'(9) is skipped by classification", h9.order())
            } else {
                format!("|H9'|={} of {g9}", h9.order())
            };
            r.check(
                "groups.h9.closure",
                "H9' is the closure of its listed generators",
                subs.iter()
                    .any(|s| s.label == Label::H9p && !s.level36 && s.group == h9),
                detail,
            );
            let reps: Vec<&NamedSubgroup> = subs.iter().filter(|s| s.level36).collect();
            let mut distinct = true;
            for i in 0..reps.len() {
                for j in i + 1..reps.len() {
                    distinct &= are_conjugate(&reps[i].group, &reps[j].group, &g36)?.is_none();
                }
            }
            r.check(
                "groups.reps36.distinct",
                "four pairwise non-conjugate level-36 groups",
                distinct,
                "pairwise non-conjugate in GL2(Z/36Z)",
            );
        }
        Err(e) => {
            r.check("groups.canonical", "named subgroups", false, e.to_string());
        }
    }

    let p6 = preimage(&h6, 36)?;
    let obstruction = is_serre_obstructed(&ImageData {
        mod_l: Vec::new(),
        mod36: p6.generators().to_vec(),
    })?;
    r.check(
        "groups.serre.h6",
        "proper commutator at level 36",
        obstruction.obstructed,
        obstruction.reason,
    );

    for l in [2, 3, 5, 7] {
        let subs = maximal_subgroups_detsurj(l)?;
        let summary: Vec<String> = subs
            .iter()
            .map(|m| format!("{}:{}", m.class, m.group.order()))
            .collect();
        r.check(
            &format!("groups.maximal.l{l}"),
            "maximal subgroups with surjective determinant",
            !subs.is_empty(),
            summary.join(" "),
        );
    }
    let _ = exec;
    Ok(r)
}

/// The Goursat scan as report lines.
pub fn verify_goursat36_suite(exec: Exec) -> Result<Report> {
    let scan = goursat_scan_36(exec)?;
    let mut r = Report::new();
    let anchor = "containment of every entangled fibered product in a conjugate of the H6' preimage";
    r.check(
        "goursat36.enumeration",
        anchor,
        scan.products > 0,
        format!(
            "normal4={} normal9={} pairs={} products={} det-onto={}",
            scan.normal4, scan.normal9, scan.matched_pairs, scan.products, scan.det_surjective
        ),
    );
    r.check(
        "goursat36.cyclic",
        "equality of commutator subgroups for cyclic quotients",
        scan.cyclic_survivors == 0,
        format!(
            "cyclic products={} with proper commutator={}",
            scan.cyclic_products, scan.cyclic_survivors
        ),
    );
    let theta = Theta::new()?;
    let s3 = FinGroup::generate(Mat2::identity(36), &s3_datum_generators(&theta));
    let p6 = preimage(&h6p(&theta), 36)?;
    let s3_survives = scan
        .survivors
        .iter()
        .any(|s| FinGroup::generate(Mat2::identity(36), &s.generators) == s3);
    r.check(
        "goursat36.s3-datum",
        "the GL2(Z/2Z) datum gives the H6' preimage",
        s3 == p6 && s3_survives,
        format!("order={} survives={s3_survives}", s3.order()),
    );
    let bad = scan.counterexamples().count();
    r.check(
        "goursat36.containment",
        anchor,
        bad == 0 && !scan.survivors.is_empty(),
        format!(
            "survivors={} contained={} counterexamples={bad}",
            scan.survivors.len(),
            scan.contained()
        ),
    );
    Ok(r)
}
