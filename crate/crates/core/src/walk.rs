//! Walk matrices, the root polynomial `h(λ)`, and the determinant formula
//! for rooted products together with the checks built on it.
//!
//! Every quantity is computed over the integers. `det h(M(G))` is obtained
//! as `Res(φ(M(G)), h)`, which equals the product of `h` over the
//! eigenvalues of `M(G)` because the characteristic polynomial is monic, so
//! no eigenvalue is ever approximated.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::{IntMatrix, RatScalar};
use crate::graphs::{adjacency, matrix_of, rooted_product, Graph, MatrixKind, RootedGraph};
use crate::poly::{interpolate_exact, is_pm_monomial, sylvester_resultant, IntPoly, RatPoly};
use crate::serde_big;

/// `[e, Me, M²e, …, M^{n-1}e]`, built from repeated matrix–vector products.
pub fn walk_matrix(m: &IntMatrix) -> IntMatrix {
    let n = m.order();
    let mut columns = Vec::with_capacity(n);
    let mut v = vec![BigInt::one(); n];
    for j in 0..n {
        if j + 1 < n {
            let next = m.mul_vec(&v);
            columns.push(std::mem::replace(&mut v, next));
        } else {
            columns.push(std::mem::take(&mut v));
        }
    }
    IntMatrix::from_columns(&columns).expect("square")
}

pub fn walk_det_matrix(m: &IntMatrix) -> BigInt {
    walk_matrix(m).det()
}

fn pairs(n: usize) -> u32 {
    u32::try_from(n * n.saturating_sub(1) / 2).expect("order fits")
}

/// Exact `det W_M(G)`; for `A_α` the cleared-denominator determinant is
/// divided by `q^{n(n-1)/2}`.
pub fn walk_det(g: &Graph, kind: &MatrixKind) -> RatScalar {
    let (m, scale) = matrix_of(g, kind);
    let d = walk_det_matrix(&m);
    RatScalar::new(d, Pow::pow(&scale, pairs(g.order())))
}

/// `h(λ) = det W(M + λ D_root)` for an integer matrix `M`.
///
/// Evaluated at `λ = 0, 1, …, m(m-1)/2` and interpolated; column `j` of the
/// walk matrix has degree at most `j` in `λ`, which bounds `deg h`.
pub fn h_poly_matrix(mh: &IntMatrix, root: usize) -> Result<IntPoly> {
    let m = mh.order();
    let d_root = IntMatrix::unit_diagonal(m, root)?;
    let bound = m * m.saturating_sub(1) / 2;
    let points: Vec<(BigInt, BigInt)> = (0..=bound)
        .map(|t| {
            let t = BigInt::from(t);
            let b = mh.add_scaled(&d_root, &t).expect("same order");
            let v = walk_det_matrix(&b);
            (t, v)
        })
        .collect();
    interpolate_exact(&points, bound)
}

/// `h(λ)` for a rooted graph; `A_α` needs [`h_poly_aalpha`] instead.
pub fn h_poly(h: &RootedGraph, kind: &MatrixKind) -> Result<IntPoly> {
    if matches!(kind, MatrixKind::Aalpha(_)) {
        return Err(Error::Precondition("h_poly needs an integer kind; use h_poly_aalpha".into()));
    }
    let (mh, _) = matrix_of(h.graph(), kind);
    h_poly_matrix(&mh, h.root())
}

/// `h(λ) = det W(A_α(H) + λ D_v)` with rational coefficients.
///
/// With `N = q·A_α(H)`, `W((N + qλD_v)/q)` has determinant
/// `q^{-m(m-1)/2} h_N(qλ)`, so coefficient `i` is `h_N[i] · q^i / q^{m(m-1)/2}`.
pub fn h_poly_aalpha(h: &RootedGraph, alpha: &RatScalar) -> Result<RatPoly> {
    let kind = MatrixKind::aalpha(alpha.clone())?;
    let (n_mat, q) = matrix_of(h.graph(), &kind);
    let hn = h_poly_matrix(&n_mat, h.root())?;
    let denom: BigInt = Pow::pow(&q, pairs(h.order()));
    let coeffs = hn
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| RatScalar::new(c * Pow::pow(&q, i as u32), denom.clone()))
        .collect();
    Ok(RatPoly::new(coeffs))
}

/// `Res(φ(M(H)), φ(M^{(v)}(H)))`, with `M^{(v)}` taken by matrix deletion.
pub fn root_resultant(mh: &IntMatrix, root: usize) -> Result<BigInt> {
    let deleted = mh.delete_row_col(root)?;
    sylvester_resultant(&mh.charpoly(), &deleted.charpoly())
}

/// Both sides of the rooted-product walk-determinant formula.
#[derive(Clone, Debug, Serialize)]
pub struct WalkReport {
    pub kind: String,
    #[serde(with = "serde_big")]
    pub scale: BigInt,
    pub n: usize,
    pub m: usize,
    pub root: usize,
    /// Direct `det W_M(G∘H)` (on the cleared-denominator matrix for `A_α`).
    #[serde(with = "serde_big")]
    pub lhs: BigInt,
    #[serde(with = "serde_big")]
    pub res_factor: BigInt,
    pub h: IntPoly,
    #[serde(with = "serde_big")]
    pub det_h_of_mg: BigInt,
    #[serde(with = "serde_big")]
    pub det_w_of_g: BigInt,
    /// `|res|^{n(n-1)/2} · |det h(M(G))| · |det W(G)|^m`
    #[serde(with = "serde_big")]
    pub rhs_abs: BigInt,
    /// Same product with signs kept, for reference only.
    #[serde(with = "serde_big")]
    pub rhs_signed: BigInt,
    pub verdict: bool,
}

impl WalkReport {
    /// Whether the signed values agree too (no claim is made either way).
    pub fn sign_agrees(&self) -> bool {
        self.lhs == self.rhs_signed
    }
}

/// Computes `det W(G∘H)` directly and compares it, up to sign, with
/// `Res^{n(n-1)/2} · det h(M(G)) · det W(G)^m`.
pub fn theorem_main_verify(g: &Graph, h: &RootedGraph, kind: &MatrixKind) -> Result<WalkReport> {
    let (mg, scale) = matrix_of(g, kind);
    let (mh, _) = matrix_of(h.graph(), kind);
    let (mp, _) = matrix_of(&rooted_product(g, h), kind);
    verify_matrices(&mg, &mh, h.root(), &mp).map(|mut r| {
        r.kind = kind.name();
        r.scale = scale;
        r
    })
}

/// The same check on raw integer matrices; `product` must equal
/// `mh ⊗ I + D_root ⊗ mg`.
pub fn verify_matrices(mg: &IntMatrix, mh: &IntMatrix, root: usize, product: &IntMatrix) -> Result<WalkReport> {
    let n = mg.order();
    let m = mh.order();
    let lhs = walk_det_matrix(product);
    let res_factor = root_resultant(mh, root)?;
    let h = h_poly_matrix(mh, root)?;
    let det_h_of_mg = sylvester_resultant(&mg.charpoly(), &h)?;
    let det_w_of_g = walk_det_matrix(mg);
    let e = pairs(n);
    let mu = u32::try_from(m).expect("order fits");
    let rhs_signed = Pow::pow(&res_factor, e) * &det_h_of_mg * Pow::pow(&det_w_of_g, mu);
    let rhs_abs = rhs_signed.abs();
    let verdict = lhs.abs() == rhs_abs;
    Ok(WalkReport {
        kind: String::new(),
        scale: BigInt::one(),
        n,
        m,
        root,
        lhs,
        res_factor,
        h,
        det_h_of_mg,
        det_w_of_g,
        rhs_abs,
        rhs_signed,
        verdict,
    })
}

/// The three controllability conditions and the direct answer.
#[derive(Clone, Debug, Serialize)]
pub struct ControllabilityReport {
    /// `det W_M(G) != 0`
    pub base_controllable: bool,
    /// `Res(φ(M(H)), φ(M^{(v)}(H))) != 0`
    pub coprime: bool,
    /// `B(λ)` controllable at every eigenvalue, i.e. `Res(φ(M(G)), h) != 0`
    pub root_matrix_controllable: bool,
    pub verdict: bool,
    /// `det W_M(G∘H) != 0`, computed directly
    pub direct: bool,
}

impl ControllabilityReport {
    pub fn consistent(&self) -> bool {
        self.verdict == self.direct
    }
}

pub fn controllability_check(g: &Graph, h: &RootedGraph, kind: &MatrixKind) -> Result<ControllabilityReport> {
    let r = theorem_main_verify(g, h, kind)?;
    Ok(controllability_from(&r))
}

/// Reads the three conditions off an existing report.
pub fn controllability_from(r: &WalkReport) -> ControllabilityReport {
    let base_controllable = !r.det_w_of_g.is_zero();
    let coprime = !r.res_factor.is_zero();
    let root_matrix_controllable = !r.det_h_of_mg.is_zero();
    ControllabilityReport {
        base_controllable,
        coprime,
        root_matrix_controllable,
        verdict: base_controllable && coprime && root_matrix_controllable,
        direct: !r.lhs.is_zero(),
    }
}

/// `det M(G∘H)` directly, and `det((det M(H))·I + (det M^{(v)}(H))·M(G))`.
pub fn root_determinant_identity(g: &Graph, h: &RootedGraph, kind: &MatrixKind) -> Result<(BigInt, BigInt)> {
    let (mg, _) = matrix_of(g, kind);
    let (mh, _) = matrix_of(h.graph(), kind);
    let (mp, _) = matrix_of(&rooted_product(g, h), kind);
    let dh = mh.det();
    let dhv = mh.delete_row_col(h.root())?.det();
    let combined = IntMatrix::identity(g.order()).scale(&dh).add_scaled(&mg, &dhv)?;
    Ok((mp.det(), combined.det()))
}

/// `det A(G)` and `det W_A(G)` with the membership verdict.
#[derive(Clone, Debug, Serialize)]
pub struct FCertificate {
    pub order: usize,
    #[serde(with = "serde_big")]
    pub det_a: BigInt,
    #[serde(with = "serde_big")]
    pub det_w: BigInt,
    pub member: bool,
}

pub fn f_certificate(g: &Graph) -> FCertificate {
    let a = adjacency(g);
    let det_a = a.det();
    let det_w = walk_det_matrix(&a);
    let member = is_member(g.order(), &det_a, &det_w);
    FCertificate { order: g.order(), det_a, det_w, member }
}

fn is_member(n: usize, det_a: &BigInt, det_w: &BigInt) -> bool {
    n.is_multiple_of(2) && det_a.abs().is_one() && det_w.abs() == BigInt::one() << (n / 2)
}

/// `det A(G) = ±1` and `det W_A(G) = ±2^{n/2}`; odd orders never qualify.
pub fn f_membership(g: &Graph) -> bool {
    let n = g.order();
    if n % 2 == 1 {
        return false;
    }
    let a = adjacency(g);
    let det_a = a.det();
    if !det_a.abs().is_one() {
        return false;
    }
    is_member(n, &det_a, &walk_det_matrix(&a))
}

/// How much of the preserver test to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    /// Evaluate every condition.
    Full,
    /// Stop at the first failed condition, cheapest first.
    Pruned,
}

/// Outcome of the three sufficient conditions for an F-preserver.
#[derive(Clone, Debug, Serialize)]
pub struct PreserverReport {
    pub order: usize,
    pub root: usize,
    #[serde(with = "serde_big")]
    pub det_a: BigInt,
    #[serde(with = "serde_big")]
    pub det_a_deleted: BigInt,
    /// `(det A(H), det A^{(v)}(H))` is `(±1, 0)` or `(0, ±1)`.
    pub cond_dets: bool,
    /// `None` when pruned before it was computed.
    #[serde(with = "serde_big::option")]
    pub resultant: Option<BigInt>,
    pub cond_res: bool,
    pub h: Option<IntPoly>,
    /// `k` with `h = ±λ^k`.
    pub monomial_exponent: Option<u32>,
    pub is_preserver: bool,
    /// `k = ⌊m/2⌋`, recorded for preservers only.
    pub conjecture_ok: Option<bool>,
    /// `H = K_1`, for which `G∘H = G`.
    pub trivial: bool,
}

pub fn preserver_check(h: &RootedGraph) -> Result<PreserverReport> {
    preserver_check_with(h, Evaluation::Full)
}

pub fn preserver_check_with(h: &RootedGraph, eval: Evaluation) -> Result<PreserverReport> {
    let a = adjacency(h.graph());
    let m = h.order();
    let det_a = a.det();
    let deleted = a.delete_row_col(h.root())?;
    let det_a_deleted = deleted.det();
    let unit = |x: &BigInt| x.abs().is_one();
    let cond_dets = (unit(&det_a) && det_a_deleted.is_zero()) || (det_a.is_zero() && unit(&det_a_deleted));
    let mut report = PreserverReport {
        order: m,
        root: h.root(),
        det_a,
        det_a_deleted,
        cond_dets,
        resultant: None,
        cond_res: false,
        h: None,
        monomial_exponent: None,
        is_preserver: false,
        conjecture_ok: None,
        trivial: m == 1,
    };
    if eval == Evaluation::Pruned && !cond_dets {
        return Ok(report);
    }
    let res = sylvester_resultant(&a.charpoly(), &deleted.charpoly())?;
    report.cond_res = unit(&res);
    report.resultant = Some(res);
    if eval == Evaluation::Pruned && !report.cond_res {
        return Ok(report);
    }
    let hp = h_poly_matrix(&a, h.root())?;
    report.monomial_exponent = is_pm_monomial(&hp);
    report.h = Some(hp);
    report.is_preserver = report.cond_dets && report.cond_res && report.monomial_exponent.is_some();
    if report.is_preserver {
        report.conjecture_ok = report.monomial_exponent.map(|k| k as usize == m / 2);
    }
    Ok(report)
}

/// One step of the family `G, G∘H, …`: builds the product and re-certifies
/// it from scratch.
pub fn dgs_family_step(g: &Graph, h: &RootedGraph) -> Result<(Graph, FCertificate)> {
    if !f_membership(g) {
        return Err(Error::Precondition("seed graph is not in F".into()));
    }
    if !preserver_check_with(h, Evaluation::Pruned)?.is_preserver {
        return Err(Error::Precondition(format!(
            "rooted graph (order {}, root {}) fails the preserver conditions",
            h.order(),
            h.root()
        )));
    }
    let product = rooted_product(g, h);
    let cert = f_certificate(&product);
    if !cert.member {
        return Err(Error::CertificationFailure(format!(
            "product of order {} has det A = {}, det W = {}",
            cert.order, cert.det_a, cert.det_w
        )));
    }
    Ok((product, cert))
}
