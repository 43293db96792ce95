//! Named verification suites. Every suite runs its checks against the
//! enumerated endomorphism monoid and reports a witness per check.

use std::cell::OnceCell;
use std::collections::BTreeSet;

use leibniz_core::autos::{
    c_scalar, centralizer_d_membership, d_f_polynomial, decompose_ud, diagonal_part,
    endo_type1_from_gammas, enumerate_endomorphisms, in_subgroup_u, is_automorphism,
    is_endomorphism, is_in_s, phi_to_unit, subdirect_check, theta_scalar, type2_ring, MapKind,
};
use leibniz_core::cyclic::{CyclicAlgebra, TypeTag};
use leibniz_core::exact::vector;
use leibniz_core::polyring::QuotientRing;
use leibniz_core::{Field, Guard, Matrix, Scalar};
use serde::Serialize;

use crate::error::CliError;
use crate::files::Loaded;
use crate::render::{compact, span, texts};

pub const SKIP_WRONG_TYPE: &str = "skipped: wrong type";
pub const SKIP_INFINITE: &str = "skipped: requires a finite field";

/// Suite ids with their titles, in run order.
pub const SUITES: [(&str, &str); 12] = [
    (
        "lemma-1.1",
        "automorphisms fix the centers and the derived algebra",
    ),
    (
        "lemma-1.3",
        "endomorphisms preserve the lower central series",
    ),
    (
        "lemma-1.4",
        "square-zero endomorphisms form a two-sided ideal",
    ),
    (
        "lemma-1.5",
        "type I endomorphisms are given by the closed form",
    ),
    (
        "cor-1.8",
        "endomorphisms split into square-zero maps and automorphisms",
    ),
    (
        "lemma-1.9",
        "the leading-coefficient character has kernel U",
    ),
    (
        "cor-1.10",
        "automorphisms factor as unitriangular times diagonal",
    ),
    ("thm-A", "U matches the one-units of F[X]/(X^n)"),
    (
        "lemma-3.1",
        "invertible maps fixing c form a normal subgroup",
    ),
    ("lemma-3.2", "maps fixing c match the residues of F[X]/a(X)"),
    (
        "thm-B",
        "invertible maps fixing c match the units of F[X]/a(X)",
    ),
    (
        "thm-C",
        "automorphisms embed into the product of the quotient groups",
    ),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub title: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl SuiteResult {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }
}

/// Expands `ID[,ID...]` or `all` into known suite ids.
pub fn parse_suite_list(text: &str) -> Result<Vec<&'static str>, CliError> {
    if text == "all" {
        return Ok(SUITES.iter().map(|(id, _)| *id).collect());
    }
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        let id = SUITES
            .iter()
            .map(|(id, _)| *id)
            .find(|id| *id == part)
            .ok_or_else(|| CliError::input(format!("unknown suite `{part}`")))?;
        if !out.contains(&id) {
            out.push(id);
        }
    }
    Ok(out)
}

fn pass(id: &str, witness: impl Into<String>) -> Check {
    Check {
        id: id.into(),
        status: Status::Pass,
        witness: witness.into(),
    }
}

fn fail(id: &str, witness: impl Into<String>) -> Check {
    Check {
        id: id.into(),
        status: Status::Fail,
        witness: witness.into(),
    }
}

fn verdict(id: &str, counterexample: Option<String>, ok: impl Into<String>) -> Check {
    match counterexample {
        None => pass(id, ok),
        Some(w) => fail(id, w),
    }
}

fn key(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

fn power(q: u64, e: usize) -> u128 {
    u128::from(q).pow(e as u32)
}

type Run = Result<Result<Vec<Check>, &'static str>, CliError>;

/// Shared state for one `verify` invocation.
pub struct Verifier<'a> {
    loaded: &'a Loaded,
    guard: Guard,
    endos: OnceCell<Vec<Matrix>>,
}

impl<'a> Verifier<'a> {
    pub fn new(loaded: &'a Loaded, guard: Guard) -> Verifier<'a> {
        Verifier {
            loaded,
            guard,
            endos: OnceCell::new(),
        }
    }

    fn field(&self) -> Field {
        self.loaded.algebra().field()
    }

    fn q(&self) -> u64 {
        self.field().order().expect("checked finite")
    }

    fn endos(&self) -> Result<&[Matrix], CliError> {
        if self.endos.get().is_none() {
            let e =
                enumerate_endomorphisms(self.loaded.algebra(), MapKind::Endomorphisms, self.guard)?;
            let _ = self.endos.set(e.maps);
        }
        Ok(self.endos.get().expect("just set"))
    }

    fn auts(&self) -> Result<Vec<&Matrix>, CliError> {
        Ok(self.endos()?.iter().filter(|m| m.is_invertible()).collect())
    }

    /// The cyclic algebra if it has the wanted type and a finite field.
    fn require(&self, wanted: fn(TypeTag) -> bool) -> Result<&'a CyclicAlgebra, &'static str> {
        let l = self
            .loaded
            .cyclic()
            .filter(|l| wanted(l.tag()))
            .ok_or(SKIP_WRONG_TYPE)?;
        if !l.field().is_finite() {
            return Err(SKIP_INFINITE);
        }
        Ok(l)
    }

    pub fn run(&self, id: &str) -> Result<SuiteResult, CliError> {
        let title = SUITES
            .iter()
            .find(|(s, _)| *s == id)
            .map(|(_, t)| *t)
            .ok_or_else(|| CliError::input(format!("unknown suite `{id}`")))?;
        let outcome = match id {
            "lemma-1.1" => self.fixed_subspaces(),
            "lemma-1.3" => self.lower_series_invariant(),
            "lemma-1.4" => self.square_zero_ideal(),
            "lemma-1.5" => self.closed_form(),
            "cor-1.8" => self.partition(),
            "lemma-1.9" => self.theta_character(),
            "cor-1.10" => self.ud_factorization(),
            "thm-A" => self.one_units(),
            "lemma-3.1" => self.normal_subgroup_c(),
            "lemma-3.2" => self.centralizer_residues(),
            "thm-B" => self.unit_group(),
            "thm-C" => self.subdirect(),
            _ => unreachable!("suite table and dispatch agree"),
        }?;
        let (status, checks) = match outcome {
            Err(reason) => (
                Status::Skipped,
                vec![Check {
                    id: "applicability".into(),
                    status: Status::Skipped,
                    witness: reason.into(),
                }],
            ),
            Ok(checks) => {
                let ok = checks.iter().all(|c| c.status == Status::Pass);
                (if ok { Status::Pass } else { Status::Fail }, checks)
            }
        };
        Ok(SuiteResult {
            suite: id.into(),
            title: title.into(),
            status,
            checks,
        })
    }

    fn fixed_subspaces(&self) -> Run {
        let alg = self.loaded.algebra();
        if !alg.field().is_finite() {
            return Ok(Err(SKIP_INFINITE));
        }
        let auts = self.auts()?;
        let centers = alg.centers();
        let letter = self.loaded.letter();
        let mut checks = Vec::new();
        for (id, s) in [
            ("left center", &centers.left),
            ("right center", &centers.right),
            ("center", &centers.two_sided),
            ("derived algebra", &alg.derived()),
        ] {
            let mut bad = None;
            for f in &auts {
                if &f.image_of(s)? != s {
                    bad = Some(format!("{} moves {}", compact(f), span(letter, s)));
                    break;
                }
            }
            let ok = format!(
                "{} fixed by all {} automorphisms",
                span(letter, s),
                auts.len()
            );
            checks.push(verdict(id, bad, ok));
        }
        Ok(Ok(checks))
    }

    fn lower_series_invariant(&self) -> Run {
        let alg = self.loaded.algebra();
        if !alg.field().is_finite() {
            return Ok(Err(SKIP_INFINITE));
        }
        let endos = self.endos()?;
        let series = alg.lower_central_series();
        let letter = self.loaded.letter();
        let mut checks = Vec::new();
        for (k, term) in series.distinct_terms().iter().enumerate() {
            let id = format!("γ{}", k + 1);
            let mut bad = None;
            for f in endos {
                if !f.image_of(term)?.is_subspace_of(term)? {
                    bad = Some(format!(
                        "{} maps {} outside itself",
                        compact(f),
                        span(letter, term)
                    ));
                    break;
                }
            }
            let ok = format!(
                "{} invariant under {} endomorphisms",
                span(letter, term),
                endos.len()
            );
            checks.push(verdict(&id, bad, ok));
        }
        Ok(Ok(checks))
    }

    fn square_zero(&self, l: &CyclicAlgebra) -> Result<Vec<&Matrix>, CliError> {
        let mut s = Vec::new();
        for f in self.endos()? {
            if is_in_s(l, f)? {
                s.push(f);
            }
        }
        Ok(s)
    }

    fn square_zero_ideal(&self) -> Run {
        let l = match self.require(|t| t == TypeTag::I) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let endos = self.endos()?;
        let s = self.square_zero(l)?;
        let mut products = None;
        'outer: for f in &s {
            for g in &s {
                if !(*f * *g).is_zero() {
                    products = Some(format!("{} · {} ≠ 0", compact(f), compact(g)));
                    break 'outer;
                }
            }
        }
        let mut left = None;
        let mut right = None;
        'scan: for e in endos {
            for f in &s {
                if left.is_none() && !is_in_s(l, &(e * *f))? {
                    left = Some(format!("{} · {} leaves S", compact(e), compact(f)));
                }
                if right.is_none() && !is_in_s(l, &(*f * e))? {
                    right = Some(format!("{} · {} leaves S", compact(f), compact(e)));
                }
                if left.is_some() && right.is_some() {
                    break 'scan;
                }
            }
        }
        let pairs = s.len() * endos.len();
        Ok(Ok(vec![
            verdict(
                "products vanish",
                products,
                format!("f·g = 0 for all {} pairs in S", s.len() * s.len()),
            ),
            verdict(
                "left absorption",
                left,
                format!("End·S ⊆ S on {pairs} pairs"),
            ),
            verdict(
                "right absorption",
                right,
                format!("S·End ⊆ S on {pairs} pairs"),
            ),
        ]))
    }

    fn closed_form(&self) -> Run {
        let l = match self.require(|t| t == TypeTag::I) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let field = l.field();
        let n = l.n();
        let elements: Vec<Scalar> = field.elements()?.collect();
        let mut closed = BTreeSet::new();
        let mut not_endo = None;
        let mut digits = vec![0usize; n];
        loop {
            let gammas: Vec<Scalar> = digits.iter().map(|&d| elements[d].clone()).collect();
            let f = endo_type1_from_gammas(l, &gammas)?;
            if not_endo.is_none() && !is_endomorphism(l.algebra(), &f) {
                not_endo = Some(format!(
                    "γ = ({}) gives {}",
                    texts(&gammas).join(","),
                    compact(&f)
                ));
            }
            closed.insert(key(&f));
            let Some(pos) = digits.iter().rposition(|&d| d + 1 < elements.len()) else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
        }
        let oracle: BTreeSet<_> = self.endos()?.iter().map(key).collect();
        let mismatch = (closed != oracle).then(|| {
            format!(
                "closed form gives {} maps, enumeration finds {}",
                closed.len(),
                oracle.len()
            )
        });
        Ok(Ok(vec![
            verdict(
                "closed forms are endomorphisms",
                not_endo,
                format!("all {} parameter vectors", closed.len()),
            ),
            verdict(
                "closed form equals enumeration",
                mismatch,
                format!("{} endomorphisms on both sides", oracle.len()),
            ),
        ]))
    }

    fn partition(&self) -> Run {
        let l = match self.require(|t| t == TypeTag::I) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let endos = self.endos()?;
        let mut bad = None;
        let (mut s_count, mut a_count) = (0usize, 0usize);
        for f in endos {
            let in_s = is_in_s(l, f)?;
            let inv = f.is_invertible();
            s_count += usize::from(in_s);
            a_count += usize::from(inv);
            if bad.is_none() && in_s == inv {
                bad = Some(format!(
                    "{} is in {} classes",
                    compact(f),
                    if in_s { "both" } else { "neither" }
                ));
            }
        }
        let q = self.q();
        let expected = (q - 1) as u128 * power(q, l.n() - 1);
        let count = (a_count as u128 != expected)
            .then(|| format!("|Aut| = {a_count}, expected (q−1)·q^(n−1) = {expected}"));
        Ok(Ok(vec![
            verdict(
                "disjoint partition",
                bad,
                format!(
                    "|End| = {} = |S| + |Aut| = {s_count} + {a_count}",
                    endos.len()
                ),
            ),
            verdict(
                "automorphism count",
                count,
                format!("|Aut| = {a_count} = (q−1)·q^(n−1)"),
            ),
        ]))
    }

    fn theta_character(&self) -> Run {
        let l = match self.require(|_| true) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let auts = self.auts()?;
        let thetas = auts
            .iter()
            .map(|f| theta_scalar(l, f))
            .collect::<Result<Vec<_>, _>>()?;
        let mut hom = None;
        'outer: for (f, tf) in auts.iter().zip(&thetas) {
            for (g, tg) in auts.iter().zip(&thetas) {
                if theta_scalar(l, &(*f * *g))? != tf * tg {
                    hom = Some(format!("ϑ fails on {} · {}", compact(f), compact(g)));
                    break 'outer;
                }
            }
        }
        // U: automorphisms inducing the identity on L/[L,L]
        let derived = l.derived_span();
        let a1 = l.a(1);
        let mut kernel = None;
        let mut u_order = 0;
        for (f, t) in auts.iter().zip(&thetas) {
            let shift = vector::sub(&f.mul_vec(&a1)?, &a1);
            let in_u = derived.contains(&shift)?;
            u_order += usize::from(in_u);
            if kernel.is_none() && (in_u != t.is_one() || in_u != in_subgroup_u(l, f)?) {
                kernel = Some(format!(
                    "{} has ϑ = {t} but U-membership {in_u}",
                    compact(f)
                ));
            }
        }
        let image: BTreeSet<Scalar> = thetas.iter().cloned().collect();
        let closed = image
            .iter()
            .all(|x| image.iter().all(|y| image.contains(&(x * y))));
        let divides = (self.q() - 1).is_multiple_of(image.len() as u64);
        let sub = (!closed || !divides).then(|| {
            format!(
                "image of ϑ has {} elements and is not a subgroup",
                image.len()
            )
        });
        Ok(Ok(vec![
            verdict(
                "homomorphism",
                hom,
                format!("ϑ(fg) = ϑ(f)ϑ(g) on {} pairs", auts.len() * auts.len()),
            ),
            verdict(
                "kernel is U",
                kernel,
                format!("|U| = {u_order} of |Aut| = {}", auts.len()),
            ),
            verdict(
                "image is a subgroup",
                sub,
                format!("|image| = {} divides q − 1 = {}", image.len(), self.q() - 1),
            ),
        ]))
    }

    fn ud_factorization(&self) -> Run {
        let l = match self.require(|t| t == TypeTag::I) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let field = l.field();
        let auts = self.auts()?;
        let mut bad = None;
        let mut uc = Vec::new();
        for f in &auts {
            let ud = decompose_ud(l, f)?;
            if bad.is_none() && ud.reassemble() != **f {
                bad = Some(format!("{} does not reassemble", compact(f)));
            }
            if ud.d_scalar.is_one() {
                uc.push(*f);
            }
        }
        let mut diag = None;
        for d in field.elements()?.filter(|d| !d.is_zero()) {
            let m = diagonal_part(&d, l.n());
            if !is_automorphism(l.algebra(), &m) {
                diag = Some(format!("D({d}) is not an automorphism"));
                break;
            }
        }
        let mut normal = None;
        'outer: for g in &auts {
            let g_inv = g.inverse()?;
            for u in &uc {
                let conj = &(*g * *u) * &g_inv;
                if !decompose_ud(l, &conj)?.d_scalar.is_one() {
                    normal = Some(format!(
                        "{} conjugates {} out of UC",
                        compact(g),
                        compact(u)
                    ));
                    break 'outer;
                }
            }
        }
        let q = self.q();
        let count = (uc.len() as u128 * u128::from(q - 1) != auts.len() as u128).then(|| {
            format!(
                "|UC|·(q−1) = {}·{} ≠ |Aut| = {}",
                uc.len(),
                q - 1,
                auts.len()
            )
        });
        Ok(Ok(vec![
            verdict(
                "f = M(u)·D(d)",
                bad,
                format!("all {} automorphisms reassemble", auts.len()),
            ),
            verdict(
                "diagonal maps are automorphisms",
                diag,
                format!("D(d) for all {} nonzero d", q - 1),
            ),
            verdict(
                "UC is normal",
                normal,
                format!("conjugation-closed over {} automorphisms", auts.len()),
            ),
            verdict(
                "order",
                count,
                format!("|Aut| = |UC|·(q−1) = {}·{}", uc.len(), q - 1),
            ),
        ]))
    }

    fn one_units(&self) -> Run {
        let l = match self.require(|t| t == TypeTag::I) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let field = l.field();
        let auts = self.auts()?;
        let mut uc = Vec::new();
        for f in auts {
            if in_subgroup_u(l, f)? {
                uc.push(f);
            }
        }
        let mut images = Vec::with_capacity(uc.len());
        for f in &uc {
            let ud = decompose_ud(l, f)?;
            images.push(phi_to_unit(field, &ud.u_params)?);
        }
        let image_set: BTreeSet<_> = images.iter().map(|e| e.coefficient_vector()).collect();
        let ring = QuotientRing::truncated(field, l.n())?;
        let target: BTreeSet<_> = ring
            .one_units(self.guard)?
            .iter()
            .map(|e| e.coefficient_vector())
            .collect();
        let injective = (image_set.len() != uc.len())
            .then(|| format!("{} maps but {} distinct images", uc.len(), image_set.len()));
        let onto = (image_set != target).then(|| {
            format!(
                "image has {} elements, one-units {}",
                image_set.len(),
                target.len()
            )
        });
        let mut hom = None;
        'outer: for (f, pf) in uc.iter().zip(&images) {
            for (g, pg) in uc.iter().zip(&images) {
                let ud = decompose_ud(l, &(*f * *g))?;
                if phi_to_unit(field, &ud.u_params)? != pf * pg {
                    hom = Some(format!("φ fails on {} · {}", compact(f), compact(g)));
                    break 'outer;
                }
            }
        }
        Ok(Ok(vec![
            verdict(
                "φ injective",
                injective,
                format!("{} distinct images", image_set.len()),
            ),
            verdict(
                "φ onto one-units",
                onto,
                format!("{} one-units of F[X]/(X^{})", target.len(), l.n()),
            ),
            verdict(
                "φ multiplicative",
                hom,
                format!("{} products", uc.len() * uc.len()),
            ),
        ]))
    }

    fn centralizer(&self, l: &CyclicAlgebra) -> Result<Vec<&Matrix>, CliError> {
        let mut d = Vec::new();
        for f in self.endos()? {
            if centralizer_d_membership(l, f)? {
                d.push(f);
            }
        }
        Ok(d)
    }

    fn normal_subgroup_c(&self) -> Run {
        let l = match self.require(|t| t == TypeTag::II) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let d = self.centralizer(l)?;
        let c: Vec<&Matrix> = d.iter().copied().filter(|f| f.is_invertible()).collect();
        let auts = self.auts()?;
        let mut sub = None;
        for f in &c {
            let inv = f.inverse()?;
            if !centralizer_d_membership(l, &inv)? {
                sub = Some(format!("inverse of {} leaves C", compact(f)));
                break;
            }
            if let Some(g) = c
                .iter()
                .find(|g| !centralizer_d_membership(l, &(*f * **g)).unwrap_or(false))
            {
                sub = Some(format!("{} · {} leaves C", compact(f), compact(g)));
                break;
            }
        }
        let mut normal = None;
        'outer: for g in &auts {
            let g_inv = g.inverse()?;
            for h in &c {
                let conj = &(*g * *h) * &g_inv;
                if !centralizer_d_membership(l, &conj)? {
                    normal = Some(format!("{} conjugates {} out of C", compact(g), compact(h)));
                    break 'outer;
                }
            }
        }
        Ok(Ok(vec![
            verdict(
                "C is a subgroup",
                sub,
                format!("|C| = {} closed under products and inverses", c.len()),
            ),
            verdict(
                "C is normal",
                normal,
                format!("conjugation-closed over |Aut| = {}", auts.len()),
            ),
        ]))
    }

    fn centralizer_residues(&self) -> Run {
        let l = match self.require(|t| t == TypeTag::II) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let d = self.centralizer(l)?;
        let q = self.q();
        let expected = power(q, l.n() - 1);
        let count = (d.len() as u128 != expected)
            .then(|| format!("|D| = {}, expected q^(n−1) = {expected}", d.len()));
        let ring = type2_ring(l)?;
        let psi = d
            .iter()
            .map(|f| d_f_polynomial(l, f))
            .collect::<Result<Vec<_>, _>>()?;
        let images: BTreeSet<_> = psi.iter().map(|e| e.coefficient_vector()).collect();
        let residues: BTreeSet<_> = ring
            .residues(self.guard)?
            .iter()
            .map(|e| e.coefficient_vector())
            .collect();
        let bijection = (images != residues || images.len() != d.len()).then(|| {
            format!(
                "{} maps, {} images, {} residues",
                d.len(),
                images.len(),
                residues.len()
            )
        });
        let mut hom = None;
        'outer: for (f, pf) in d.iter().zip(&psi) {
            for (g, pg) in d.iter().zip(&psi) {
                if d_f_polynomial(l, &(*f * *g))? != pf * pg {
                    hom = Some(format!("ψ fails on {} · {}", compact(f), compact(g)));
                    break 'outer;
                }
            }
        }
        let a_text = l.annihilator_poly_text()?;
        Ok(Ok(vec![
            verdict("order of D", count, format!("|D| = {} = q^(n−1)", d.len())),
            verdict(
                "ψ bijective",
                bijection,
                format!("onto the {} residues mod {a_text}", residues.len()),
            ),
            verdict(
                "composition ↦ multiplication",
                hom,
                format!("{} products", d.len() * d.len()),
            ),
        ]))
    }

    fn unit_group(&self) -> Run {
        let l = match self.require(|t| t == TypeTag::II) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let d = self.centralizer(l)?;
        let ring = type2_ring(l)?;
        let mut c_units = BTreeSet::new();
        for f in d.iter().filter(|f| f.is_invertible()) {
            c_units.insert(d_f_polynomial(l, f)?.coefficient_vector());
        }
        let units: BTreeSet<_> = ring
            .units(self.guard)?
            .iter()
            .map(|e| e.coefficient_vector())
            .collect();
        let unit_match = (c_units != units).then(|| {
            format!(
                "|C| = {} but |U(F[X]/a(X))| = {}",
                c_units.len(),
                units.len()
            )
        });
        let auts = self.auts()?;
        let scalars = auts
            .iter()
            .map(|f| c_scalar(l, f))
            .collect::<Result<Vec<_>, _>>()?;
        let mut hom = None;
        'outer: for (f, sf) in auts.iter().zip(&scalars) {
            for (g, sg) in auts.iter().zip(&scalars) {
                if c_scalar(l, &(*f * *g))? != sf * sg {
                    hom = Some(format!(
                        "scalar action fails on {} · {}",
                        compact(f),
                        compact(g)
                    ));
                    break 'outer;
                }
            }
        }
        let kernel: BTreeSet<_> = auts
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
        let ker = (kernel != c_group)
            .then(|| format!("kernel has {} maps, C has {}", kernel.len(), c_group.len()));
        let image: BTreeSet<&Scalar> = scalars.iter().collect();
        Ok(Ok(vec![
            verdict(
                "C ≅ unit group",
                unit_match,
                format!("|C| = {} units", units.len()),
            ),
            verdict(
                "scalar action is a homomorphism",
                hom,
                format!("{} products", auts.len() * auts.len()),
            ),
            verdict(
                "kernel is C",
                ker,
                format!(
                    "|Aut|/|C| = {}/{}, observed image of size {} in F^×",
                    auts.len(),
                    c_group.len(),
                    image.len()
                ),
            ),
        ]))
    }

    fn subdirect(&self) -> Run {
        let l = match self.require(|t| matches!(t, TypeTag::III { .. })) {
            Ok(l) => l,
            Err(r) => return Ok(Err(r)),
        };
        let r = subdirect_check(l, self.guard)?;
        let flag = |ok: bool, msg: &str| (!ok).then(|| msg.to_string());
        Ok(Ok(vec![
            verdict(
                "induced maps are automorphisms",
                flag(
                    r.images_are_automorphisms,
                    "an induced quotient map is singular",
                ),
                format!(
                    "|Aut(L/V)| = {}, |Aut(L/[U,U])| = {}",
                    r.quotient_aut_orders.0, r.quotient_aut_orders.1
                ),
            ),
            verdict(
                "projections are homomorphisms",
                flag(
                    r.homomorphic == (true, true),
                    "a projection does not respect composition",
                ),
                format!(
                    "images of size {} and {}",
                    r.image_orders.0, r.image_orders.1
                ),
            ),
            verdict(
                "pair map is injective",
                flag(
                    r.injective && r.kernel_order == 1,
                    "two automorphisms share both quotient maps",
                ),
                format!(
                    "|Aut| = {} = |image| = {}, kernel trivial",
                    r.aut_order, r.pair_image_order
                ),
            ),
        ]))
    }
}
