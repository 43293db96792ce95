//! Acceptance criteria, one line of output per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use leibniz_core::autos::{
    c_scalar, centralizer_d_membership, d_f_polynomial, decompose_ud, endo_type1_from_gammas,
    enumerate_endomorphisms, in_subgroup_u, is_in_s, phi_to_unit, subdirect_check, type2_ring,
    MapKind,
};
use leibniz_core::cyclic::{build_cyclic, CyclicAlgebra, CyclicSpec, TypeTag};
use leibniz_core::exact::vector;
use leibniz_core::polyring::QuotientRing;
use leibniz_core::{Field, Guard, Matrix, Scalar, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const GRID: [(u64, usize); 5] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn build(field: Field, n: usize, alpha: &[i64]) -> CyclicAlgebra {
    build_cyclic(CyclicSpec::from_i64(field, n, alpha).unwrap()).unwrap()
}

fn type1(q: u64, n: usize) -> CyclicAlgebra {
    build(gf(q), n, &vec![0; n - 1])
}

fn key(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// Endomorphisms and automorphisms of the type I algebra for each grid point.
struct GridData {
    q: u64,
    n: usize,
    algebra: CyclicAlgebra,
    endos: Vec<Matrix>,
    auts: Vec<Matrix>,
}

fn grid() -> Vec<GridData> {
    GRID.iter()
        .map(|&(q, n)| {
            let algebra = type1(q, n);
            let endos =
                enumerate_endomorphisms(algebra.algebra(), MapKind::Endomorphisms, Guard::Default)
                    .unwrap()
                    .maps;
            let auts = endos
                .iter()
                .filter(|m| m.is_invertible())
                .cloned()
                .collect();
            GridData {
                q,
                n,
                algebra,
                endos,
                auts,
            }
        })
        .collect()
}

fn pow(q: u64, e: usize) -> usize {
    q.pow(e as u32) as usize
}

fn type1_aut_counts(grid: &[GridData]) -> Outcome {
    let mut seen = Vec::new();
    for g in grid {
        let expected = (g.q as usize - 1) * pow(g.q, g.n - 1);
        ensure!(
            g.auts.len() == expected,
            "GF({}) n={}: |Aut| = {} != {expected}",
            g.q,
            g.n,
            g.auts.len()
        );
        let field_units = gf(g.q).elements().unwrap().filter(|x| !x.is_zero()).count();
        let ring = QuotientRing::truncated(gf(g.q), g.n).unwrap();
        let one_units = ring.one_units(Guard::Default).unwrap().len();
        ensure!(
            field_units * one_units == g.auts.len(),
            "GF({}) n={}: {field_units} * {one_units} != {}",
            g.q,
            g.n,
            g.auts.len()
        );
        seen.push(format!("GF({})/{}:{}", g.q, g.n, g.auts.len()));
    }
    Ok(seen.join(" "))
}

fn square_zero_partition(grid: &[GridData]) -> Outcome {
    for g in grid {
        let mut square_zero = Vec::new();
        let mut invertible = 0;
        for f in &g.endos {
            let in_s = is_in_s(&g.algebra, f).map_err(|e| e.to_string())?;
            let inv = f.is_invertible();
            ensure!(
                in_s != inv,
                "GF({}) n={}: map in both or neither class: {f:?}",
                g.q,
                g.n
            );
            if in_s {
                square_zero.push(f);
            } else {
                invertible += 1;
            }
        }
        ensure!(invertible == g.auts.len(), "automorphism count mismatch");
        ensure!(
            square_zero.len() == pow(g.q, g.n - 1),
            "GF({}) n={}: |S| = {}",
            g.q,
            g.n,
            square_zero.len()
        );
        for f in &square_zero {
            for h in &square_zero {
                ensure!((*f * *h).is_zero(), "nonzero product inside S");
            }
        }
    }
    Ok("|End| = |Aut| + q^(n-1) on the grid".into())
}

fn closed_form_matches_oracle(grid: &[GridData]) -> Outcome {
    for g in grid {
        let field = gf(g.q);
        let elements: Vec<Scalar> = field.elements().unwrap().collect();
        let mut closed = BTreeSet::new();
        for index in 0..pow(g.q, g.n) {
            let mut rest = index;
            let gammas: Vec<Scalar> = (0..g.n)
                .map(|_| {
                    let d = rest % g.q as usize;
                    rest /= g.q as usize;
                    elements[d].clone()
                })
                .collect();
            let m = endo_type1_from_gammas(&g.algebra, &gammas).map_err(|e| e.to_string())?;
            closed.insert(key(&m));
        }
        let oracle: BTreeSet<_> = g.endos.iter().map(key).collect();
        ensure!(oracle.len() == g.endos.len(), "oracle list has duplicates");
        ensure!(
            closed == oracle,
            "GF({}) n={}: closed form and oracle differ",
            g.q,
            g.n
        );
    }
    Ok("closed-form family equals the oracle list".into())
}

fn truncated_ring_isomorphism(grid: &[GridData]) -> Outcome {
    let mut pairs = 0;
    for g in grid.iter().filter(|g| (g.q, g.n) != (2, 2)) {
        let field = gf(g.q);
        let l = &g.algebra;
        let uc: Vec<&Matrix> = g
            .auts
            .iter()
            .filter(|f| in_subgroup_u(l, f).unwrap())
            .collect();
        let phi = |f: &Matrix| -> Result<_, String> {
            let ud = decompose_ud(l, f).map_err(|e| e.to_string())?;
            ensure!(ud.d_scalar.is_one(), "element of U with d != 1");
            phi_to_unit(field, &ud.u_params).map_err(|e| e.to_string())
        };
        let images = uc.iter().map(|f| phi(f)).collect::<Result<Vec<_>, _>>()?;
        let image_set: BTreeSet<Vec<Scalar>> =
            images.iter().map(|e| e.coefficient_vector()).collect();
        let ring = QuotientRing::truncated(field, g.n).unwrap();
        let target: BTreeSet<Vec<Scalar>> = ring
            .one_units(Guard::Default)
            .unwrap()
            .iter()
            .map(|e| e.coefficient_vector())
            .collect();
        ensure!(
            image_set.len() == uc.len(),
            "GF({}) n={}: not injective",
            g.q,
            g.n
        );
        ensure!(
            image_set == target,
            "GF({}) n={}: image is not the one-units",
            g.q,
            g.n
        );
        for (f, pf) in uc.iter().zip(&images) {
            for (h, ph) in uc.iter().zip(&images) {
                let product = phi(&(*f * *h))?;
                ensure!(
                    product == pf * ph,
                    "GF({}) n={}: not multiplicative",
                    g.q,
                    g.n
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("bijective and multiplicative on {pairs} pairs"))
}

fn centralizer_and_units() -> Outcome {
    let mut details = Vec::new();
    for (p, n, alpha) in [(3u64, 2usize, vec![1i64]), (2, 3, vec![1, 1])] {
        let l = build(gf(p), n, &alpha);
        let endos = enumerate_endomorphisms(l.algebra(), MapKind::Endomorphisms, Guard::Default)
            .map_err(|e| e.to_string())?
            .maps;
        let d: Vec<&Matrix> = endos
            .iter()
            .filter(|f| centralizer_d_membership(&l, f).unwrap())
            .collect();
        ensure!(
            d.len() == pow(p, n - 1),
            "|D| = {} for GF({p}) n={n}",
            d.len()
        );

        let ring = type2_ring(&l).map_err(|e| e.to_string())?;
        let psi = d
            .iter()
            .map(|f| d_f_polynomial(&l, f).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let images: BTreeSet<_> = psi.iter().map(|e| e.coefficient_vector()).collect();
        let residues: BTreeSet<_> = ring
            .residues(Guard::Default)
            .unwrap()
            .iter()
            .map(|e| e.coefficient_vector())
            .collect();
        ensure!(
            images == residues && images.len() == d.len(),
            "psi is not a bijection onto residues"
        );
        for (f, pf) in d.iter().zip(&psi) {
            for (h, ph) in d.iter().zip(&psi) {
                let composed = d_f_polynomial(&l, &(*f * *h)).map_err(|e| e.to_string())?;
                ensure!(
                    composed == pf * ph,
                    "composition does not map to multiplication"
                );
            }
        }

        let c_units: BTreeSet<_> = d
            .iter()
            .zip(&psi)
            .filter(|(f, _)| f.is_invertible())
            .map(|(_, e)| e.coefficient_vector())
            .collect();
        let units: BTreeSet<_> = ring
            .units(Guard::Default)
            .unwrap()
            .iter()
            .map(|e| e.coefficient_vector())
            .collect();
        ensure!(
            c_units == units,
            "invertible part of D does not match the unit group"
        );

        let group: Vec<&Matrix> = endos.iter().filter(|f| f.is_invertible()).collect();
        let scalars = group
            .iter()
            .map(|f| c_scalar(&l, f).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        for (f, sf) in group.iter().zip(&scalars) {
            for (h, sh) in group.iter().zip(&scalars) {
                let s = c_scalar(&l, &(*f * *h)).map_err(|e| e.to_string())?;
                ensure!(s == sf * sh, "scalar action is not a homomorphism");
            }
        }
        let kernel: BTreeSet<_> = group
            .iter()
            .zip(&scalars)
            .filter(|(_, s)| s.is_one())
            .map(|(f, _)| key(f))
            .collect();
        let c_group: BTreeSet<_> = d
            .iter()
            .filter(|f| f.is_invertible())
            .map(|f| key(f))
            .collect();
        ensure!(
            kernel == c_group,
            "kernel of the scalar action differs from D ∩ Aut"
        );
        ensure!(
            group.len().is_multiple_of(c_group.len())
                && (p as usize - 1).is_multiple_of(group.len() / c_group.len()),
            "index |G|/|C| = {}/{} does not divide q - 1",
            group.len(),
            c_group.len()
        );
        let image: BTreeSet<_> = scalars.iter().collect();
        details.push(format!(
            "GF({p}) n={n}: |D|={} |C|={} |G|={} scalar image {}",
            d.len(),
            c_group.len(),
            group.len(),
            image.len()
        ));
    }
    Ok(details.join("; "))
}

fn subdirect_embedding() -> Outcome {
    let mut details = Vec::new();
    for (n, alpha, guard) in [
        (3usize, vec![0i64, 1], Guard::Default),
        (4, vec![0, 0, 1], Guard::Raised),
    ] {
        let l = build(gf(2), n, &alpha);
        let report = subdirect_check(&l, guard).map_err(|e| e.to_string())?;
        ensure!(
            report.images_are_automorphisms,
            "n={n}: induced map is not an automorphism"
        );
        ensure!(report.injective, "n={n}: pair map is not injective");
        ensure!(
            report.homomorphic == (true, true),
            "n={n}: projection is not a homomorphism"
        );
        ensure!(
            report.kernel_order == 1,
            "n={n}: kernel has {} elements",
            report.kernel_order
        );
        details.push(format!(
            "n={n}: |Aut|={} images {}x{} of {}x{}",
            report.aut_order,
            report.image_orders.0,
            report.image_orders.1,
            report.quotient_aut_orders.0,
            report.quotient_aut_orders.1
        ));
    }
    Ok(details.join("; "))
}

fn random_spec(rng: &mut ChaCha8Rng) -> CyclicSpec {
    let field = [Field::Rationals, gf(2), gf(3), gf(5)][rng.gen_range(0..4)];
    let n = rng.gen_range(1..=6);
    let alpha = (0..n - 1)
        .map(|_| {
            if rng.gen_bool(0.5) {
                return field.zero();
            }
            match field {
                Field::Rationals => {
                    let num = [-4, -3, -2, -1, 1, 2, 3, 4][rng.gen_range(0..8)];
                    field.ratio(num, rng.gen_range(1..=3)).unwrap()
                }
                _ => field.from_u64(rng.gen_range(1..field.order().unwrap())),
            }
        })
        .collect();
    CyclicSpec::new(field, n, alpha).unwrap()
}

fn random_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let mut counts = [0usize; 3];
    for trial in 0..200 {
        let spec = random_spec(&mut rng);
        let label = format!(
            "spec #{trial} ({}, n={}, {:?})",
            spec.field(),
            spec.n(),
            spec.alphas()
        );
        let l = build_cyclic(spec).map_err(|e| format!("{label}: {e}"))?;
        let alg = l.algebra();
        let field = l.field();
        let n = l.n();
        let br = |x: &[Scalar], y: &[Scalar]| alg.bracket(x, y).unwrap();

        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let (a, b, c) = (l.a(i), l.a(j), l.a(k));
                    let lhs = br(&br(&a, &b), &c);
                    let rhs = vector::sub(&br(&a, &br(&b, &c)), &br(&b, &br(&a, &c)));
                    ensure!(lhs == rhs, "{label}: identity fails on ({i},{j},{k})");
                }
            }
        }
        let span_tail = Subspace::coordinate(field, n, 1..n);
        ensure!(
            alg.derived() == span_tail,
            "{label}: [L,L] != span(a_2..a_n)"
        );
        ensure!(
            alg.leib_kernel() == span_tail,
            "{label}: Leib(L) != span(a_2..a_n)"
        );

        let class = alg.nilpotency_class();
        match l.tag() {
            TypeTag::I => {
                counts[0] += 1;
                let expected = if n >= 2 { n } else { 1 };
                ensure!(
                    class == Some(expected),
                    "{label}: type I with class {class:?}"
                );
            }
            TypeTag::II => {
                counts[1] += 1;
                ensure!(class.is_none(), "{label}: type II is nilpotent");
                let (c, companion) = l.canonical_c().unwrap();
                ensure!(vector::is_zero(&br(&c, &c)), "{label}: [c,c] != 0");
                let fc = Subspace::span(field, n, std::slice::from_ref(&c)).unwrap();
                ensure!(alg.centers().right == fc, "{label}: right center != Fc");
                ensure!(
                    span_tail.sum(&fc).unwrap().is_full()
                        && span_tail.intersect(&fc).unwrap().is_zero(),
                    "{label}: L != [L,L] + Fc directly"
                );
                ensure!(companion.is_invertible(), "{label}: singular companion");
            }
            TypeTag::III { t } => {
                counts[2] += 1;
                ensure!(class.is_none(), "{label}: type III is nilpotent");
                let r = l.rebase_type3().unwrap();
                ensure!(r.transition.is_invertible(), "{label}: singular transition");
                ensure!(
                    alg.is_ideal(&r.v_sub).unwrap(),
                    "{label}: V is not an ideal"
                );
                ensure!(
                    alg.is_ideal(&r.uu_sub).unwrap(),
                    "{label}: [U,U] is not an ideal"
                );
                for j in t..=n {
                    ensure!(
                        br(&l.a(1), r.d(j)) == br(r.d(1), r.d(j)),
                        "{label}: [a_1,d_{j}] != [d_1,d_{j}]"
                    );
                }
                ensure!(
                    vector::is_zero(&br(r.d(1), r.d(t - 1))),
                    "{label}: [d_1,d_(t-1)] != 0"
                );
                for j in 1..t - 1 {
                    ensure!(
                        br(r.d(1), r.d(j)) == r.d(j + 1),
                        "{label}: [d_1,d_{j}] != d_{}",
                        j + 1
                    );
                }
            }
        }
    }
    ensure!(
        counts.iter().all(|&c| c > 0),
        "sample misses a type: {counts:?}"
    );
    Ok(format!(
        "200 specs, types I/II/III = {}/{}/{}",
        counts[0], counts[1], counts[2]
    ))
}

fn preserved_subspaces(grid: &[GridData]) -> Outcome {
    let mut checked = 0;
    for g in grid {
        let alg = g.algebra.algebra();
        let centers = alg.centers();
        let lower = alg.lower_central_series();
        let upper = alg.upper_central_series();
        let mut fixed = vec![
            centers.left,
            centers.right,
            centers.two_sided,
            alg.derived(),
        ];
        fixed.extend(lower.terms.iter().cloned());
        fixed.extend(upper.terms.iter().cloned());
        for f in &g.auts {
            for s in &fixed {
                ensure!(
                    &f.image_of(s).unwrap() == s,
                    "GF({}) n={}: {s} not fixed by {f:?}",
                    g.q,
                    g.n
                );
                checked += 1;
            }
        }
        for f in &g.endos {
            for s in &lower.terms {
                ensure!(
                    f.image_of(s).unwrap().is_subspace_of(s).unwrap(),
                    "lower term not invariant"
                );
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} subspace checks"))
}

fn unit_counts() -> Outcome {
    for &(q, n) in &GRID {
        let ring = QuotientRing::truncated(gf(q), n).unwrap();
        let units = ring.units(Guard::Default).unwrap();
        let nonzero_constant = ring
            .residues(Guard::Default)
            .unwrap()
            .into_iter()
            .filter(|e| !e.coefficient_vector()[0].is_zero())
            .count();
        ensure!(
            units.len() == (q as usize - 1) * pow(q, n - 1),
            "GF({q}) n={n}: |U| = {}",
            units.len()
        );
        ensure!(
            units.len() == nonzero_constant,
            "gcd filter disagrees with the constant-term test"
        );
        let one_units = ring.one_units(Guard::Default).unwrap();
        ensure!(
            one_units.len() == pow(q, n - 1),
            "GF({q}) n={n}: |I| = {}",
            one_units.len()
        );
        ensure!(
            one_units.iter().all(|e| e.is_unit()),
            "one-unit that is not a unit"
        );
    }
    Ok("|U| = (q-1)q^(n-1), |I| = q^(n-1) on the grid".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let data = grid();
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "type I automorphism counts",
            Box::new(|| type1_aut_counts(&data)),
        ),
        (
            "square-zero / automorphism partition",
            Box::new(|| square_zero_partition(&data)),
        ),
        (
            "closed form equals oracle",
            Box::new(|| closed_form_matches_oracle(&data)),
        ),
        (
            "unitriangular group onto one-units",
            Box::new(|| truncated_ring_isomorphism(&data)),
        ),
        (
            "type II centralizer and unit group",
            Box::new(centralizer_and_units),
        ),
        (
            "type III subdirect embedding",
            Box::new(subdirect_embedding),
        ),
        (
            "structural invariants on random specs",
            Box::new(random_invariants),
        ),
        (
            "automorphisms preserve characteristic subspaces",
            Box::new(|| preserved_subspaces(&data)),
        ),
        ("truncated ring unit counts", Box::new(unit_counts)),
    ];
    let mut failures = 0;
    for (index, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "PASS  criterion {}  {title}: {detail} [{elapsed:.2}s]",
                index + 1
            ),
            Err(witness) => {
                failures += 1;
                println!(
                    "FAIL  criterion {}  {title}: {witness} [{elapsed:.2}s]",
                    index + 1
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
