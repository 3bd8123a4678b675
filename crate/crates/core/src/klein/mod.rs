//! The five-dimensional representation ξ of `PSL(2, F_11)`.
//!
//! `ξ(a)` is the cyclic permutation `e_i ↦ e_{i+1}` and
//! `ξ(c) = diag(ζ, ζ⁴, ζ⁵, ζ⁹, ζ³)` with `ζ = ζ_11`. A third generator
//! outside the Borel subgroup `⟨a, c⟩` comes from the odd Weil model.

mod group;

use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

pub use group::{ConjClass, GroupTable};

use crate::arith::{lambda_embed, CycloNum, Field, QuadInt};
use crate::linalg::Matrix;

/// Matrix over cyclotomic numbers.
pub type CMat = Matrix<CycloNum>;

/// Exponents `x` for the basis `e_1, …, e_5`; `ξ(c)` acts on `e_i` by `ζ^{x_i²}`.
pub const WEIL_LABELS: [i64; 5] = [1, 2, 4, 3, 5];

/// Upper bound on closures before the generator is declared wrongly normalized.
pub const CLOSURE_CAP: usize = 1320;

#[derive(Debug, Error)]
pub enum KleinError {
    #[error("closure exceeded cap of {cap} elements")]
    ClosureExceeded { cap: usize },
    #[error("no determinant-one normalization of the Weil generator in Q(ζ_11)")]
    NoNormalization,
    #[error("element of order {order}: fixed locus may be positive-dimensional")]
    EvenOrder { order: u32 },
    #[error("the identity has no finite fixed locus")]
    Identity,
    #[error("broken group table: {0}")]
    BrokenTable(String),
    #[error("leading minor {index} is not rational: {value}")]
    IrrationalMinor { index: usize, value: String },
}

pub fn gen_a() -> CMat {
    CMat::from_fn(5, 5, |i, j| if i == (j + 1) % 5 { CycloNum::one() } else { CycloNum::zero() })
}

pub fn gen_c() -> CMat {
    let d: Vec<CycloNum> = WEIL_LABELS.iter().map(|&x| CycloNum::zeta(11, x * x)).collect();
    CMat::diagonal(&d)
}

/// `√−11 = 1 + 2λ` inside `Q(ζ_11)`.
pub fn sqrt_minus_11() -> CycloNum {
    CycloNum::one() + lambda_embed() * CycloNum::from_i64(2)
}

/// Unnormalized odd Weil matrix `(ζ^{xy} − ζ^{−xy})` over the labels, with the
/// basis twist `e_2 ↦ −e_2` that makes `a`, `c` and it satisfy the relations
/// of a single representation.
fn weil_candidate() -> CMat {
    let twist = [1, -1, 1, 1, 1];
    CMat::from_fn(5, 5, |i, j| {
        let (y, x) = (WEIL_LABELS[i], WEIL_LABELS[j]);
        let v = CycloNum::zeta(11, x * y) - CycloNum::zeta(11, -x * y);
        v * CycloNum::from_i64(twist[i] * twist[j])
    })
}

/// The determinant-one Weil generator, scaled by `μ·(1+2λ)^k` with
/// `μ = ±1`, `|k| ≤ 3`.
pub fn weil_outside_borel() -> Result<CMat, KleinError> {
    let s0 = weil_candidate();
    let d0 = s0.det();
    let r = sqrt_minus_11();
    for k in -3i32..=3 {
        let base = if k >= 0 { r.pow(k as u32) } else { r.inv().pow((-k) as u32) };
        for mu in [1i64, -1] {
            let scalar = base.clone() * CycloNum::from_i64(mu);
            if (d0.clone() * scalar.pow(5)).is_one() {
                return Ok(s0.scale(&scalar));
            }
        }
    }
    Err(KleinError::NoNormalization)
}

/// The 660-element group `ξ(PSL(2, F_11))` with labelled classes, built once.
pub fn klein_table() -> Result<&'static GroupTable, KleinError> {
    static TABLE: OnceLock<GroupTable> = OnceLock::new();
    if let Some(t) = TABLE.get() {
        return Ok(t);
    }
    let s = weil_outside_borel()?;
    let mut t = GroupTable::generate(&[gen_a(), gen_c(), s], CLOSURE_CAP)?;
    let a = t.generators()[0];
    let c = t.generators()[1];
    t.label_psl2_11(a, c)?;
    Ok(TABLE.get_or_init(|| t))
}

/// Representations built functorially from ξ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepFunctor {
    Trivial,
    Xi,
    XiDual,
    Wedge2,
    Sym2Wedge2,
    /// `χ₀ ⊕ ξ` on `V₆ = ⟨e_0⟩ ⊕ V_ξ`.
    V6,
    /// `∧³(χ₀ ⊕ ξ)` in the lexicographic basis `e_{ijk}`.
    Wedge3V6,
}

impl RepFunctor {
    pub const ALL: [RepFunctor; 7] = [
        RepFunctor::Trivial,
        RepFunctor::Xi,
        RepFunctor::XiDual,
        RepFunctor::Wedge2,
        RepFunctor::Sym2Wedge2,
        RepFunctor::V6,
        RepFunctor::Wedge3V6,
    ];

    pub fn dim(self) -> usize {
        match self {
            RepFunctor::Trivial => 1,
            RepFunctor::Xi | RepFunctor::XiDual => 5,
            RepFunctor::Wedge2 => 10,
            RepFunctor::Sym2Wedge2 => 55,
            RepFunctor::V6 => 6,
            RepFunctor::Wedge3V6 => 20,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RepFunctor::Trivial => "chi0",
            RepFunctor::Xi => "xi",
            RepFunctor::XiDual => "xi_dual",
            RepFunctor::Wedge2 => "wedge2_xi",
            RepFunctor::Sym2Wedge2 => "sym2_wedge2_xi",
            RepFunctor::V6 => "chi0_plus_xi",
            RepFunctor::Wedge3V6 => "wedge3_chi0_plus_xi",
        }
    }

    /// The matrix of `F(g)` given `ξ(g)`.
    pub fn matrix(self, g: &CMat) -> CMat {
        match self {
            RepFunctor::Trivial => CMat::identity(1),
            RepFunctor::Xi => g.clone(),
            RepFunctor::XiDual => g.inverse().expect("group elements are invertible").transpose(),
            RepFunctor::Wedge2 => g.compound(2),
            RepFunctor::Sym2Wedge2 => sym2(&g.compound(2)),
            RepFunctor::V6 => extend_to_v6(g),
            RepFunctor::Wedge3V6 => extend_to_v6(g).compound(3),
        }
    }
}

fn sym2(w: &CMat) -> CMat {
    let n = w.rows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    CMat::from_fn(pairs.len(), pairs.len(), |r, c| {
        let (i, j) = pairs[r];
        let (k, l) = pairs[c];
        if i == j {
            w[(i, k)].clone() * &w[(i, l)]
        } else {
            w[(i, k)].clone() * &w[(j, l)] + w[(j, k)].clone() * &w[(i, l)]
        }
    })
}

/// `1 ⊕ g` acting on `V₆` with `e_0` first.
pub fn extend_to_v6(g: &CMat) -> CMat {
    let n = g.rows() + 1;
    CMat::from_fn(n, n, |i, j| match (i, j) {
        (0, 0) => CycloNum::one(),
        (0, _) | (_, 0) => CycloNum::zero(),
        _ => g[(i - 1, j - 1)].clone(),
    })
}

/// `χ_F(g)` for the element with index `g` of `table`, from traces of powers.
pub fn character(table: &GroupTable, f: RepFunctor, g: usize) -> CycloNum {
    let p = |e: u32| table.trace(table.power(g, e));
    let half = CycloNum::from_i64(2).inv();
    let wedge2 = |e: u32| (p(e) * p(e) - p(2 * e)) * &half;
    match f {
        RepFunctor::Trivial => CycloNum::one(),
        RepFunctor::Xi => p(1),
        RepFunctor::XiDual => p(1).conj(),
        RepFunctor::Wedge2 => wedge2(1),
        RepFunctor::Sym2Wedge2 => (wedge2(1) * wedge2(1) + wedge2(2)) * &half,
        RepFunctor::V6 => CycloNum::one() + p(1),
        RepFunctor::Wedge3V6 => {
            // e₃ = (p₁³ − 3p₁p₂ + 2p₃)/6 plus the ∧²ξ summand
            let e3 = (p(1) * p(1) * p(1) - p(1) * p(2) * CycloNum::from_i64(3)
                + p(3) * CycloNum::from_i64(2))
                * CycloNum::from_i64(6).inv();
            e3 + wedge2(1)
        }
    }
}

/// Multiplicity of the trivial representation in `F`.
pub fn trivial_multiplicity(table: &GroupTable, f: RepFunctor) -> Result<u64, KleinError> {
    let m = table.inner_product(|g| character(table, f, g), |_| CycloNum::one());
    nonnegative_integer(&m)
}

/// `⟨χ_F, χ_F⟩`; equals 1 exactly when `F` is irreducible.
pub fn character_norm(table: &GroupTable, f: RepFunctor) -> Result<u64, KleinError> {
    let chi = |g| character(table, f, g);
    nonnegative_integer(&table.inner_product(chi, chi))
}

fn nonnegative_integer(v: &CycloNum) -> Result<u64, KleinError> {
    v.to_rational()
        .filter(|q| q.is_integer())
        .and_then(|q| q.numer().try_into().ok())
        .ok_or_else(|| KleinError::BrokenTable(format!("multiplicity {v} is not a nonnegative integer")))
}

/// `2 + 2χ_{∧²ξ}(g)² − χ_{∧²ξ}(g²)`, the Lefschetz number of `g` on the
/// surface `Y^{≥2}`. Involutions fix a curve on the surface and are rejected;
/// every other non-identity element has finitely many fixed points.
pub fn lefschetz_surface_count(table: &GroupTable, g: usize) -> Result<i64, KleinError> {
    let order = table.order_of(g);
    if order == 1 {
        return Err(KleinError::Identity);
    }
    if order == 2 {
        return Err(KleinError::EvenOrder { order });
    }
    let w1 = character(table, RepFunctor::Wedge2, g);
    let w2 = character(table, RepFunctor::Wedge2, table.mul(g, g));
    let v = CycloNum::from_i64(2) + w1.clone() * &w1 * CycloNum::from_i64(2) - w2;
    v.to_rational()
        .filter(|q| q.is_integer())
        .and_then(|q| q.numer().try_into().ok())
        .ok_or_else(|| KleinError::BrokenTable(format!("Lefschetz number {v} is not an integer")))
}

/// `Σ_g conj(F(g))ᵀ F(g)` over the whole table.
pub fn invariant_hermitian(table: &GroupTable, f: RepFunctor) -> CMat {
    let n = f.dim();
    table
        .elements()
        .par_iter()
        .map(|g| {
            let m = f.matrix(g);
            m.conj_transpose().mul(&m)
        })
        .reduce(|| CMat::zeros(n, n), |a, b| a.add(&b))
}

/// Whether `conj(F(h))ᵀ M F(h) = M` for every generator `h` of the table.
pub fn is_invariant_form(table: &GroupTable, f: RepFunctor, m: &CMat) -> bool {
    table.generators().iter().all(|&h| {
        let fh = f.matrix(table.element(h));
        fh.conj_transpose().mul(m).mul(&fh) == *m
    })
}

/// Positive definiteness of a Hermitian matrix from its leading principal
/// minors. The minors are real; only rational ones can be signed exactly.
pub fn is_positive_definite_hermitian(m: &CMat) -> Result<bool, KleinError> {
    for (index, minor) in m.leading_minors().into_iter().enumerate() {
        let q = minor.to_rational().ok_or_else(|| KleinError::IrrationalMinor {
            index: index + 1,
            value: minor.to_string(),
        })?;
        if q <= <crate::arith::Rational as Field>::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Indices of the elements whose `V₆`-action maps the column span of
/// `subspace` (a `6 × k` matrix) to itself.
pub fn stabilizer(table: &GroupTable, subspace: &CMat) -> Vec<usize> {
    assert_eq!(subspace.rows(), 6, "subspace must live in V₆");
    let r = subspace.rank();
    assert!(r > 0, "subspace must be nonzero");
    (0..table.len())
        .into_par_iter()
        .filter(|&g| {
            let image = extend_to_v6(table.element(g)).mul(subspace);
            let both = subspace.transpose().vstack(&image.transpose());
            both.rank() == r
        })
        .collect()
}

/// `λ` and `λ̄` as they appear in the character table, for pretty printing.
pub fn pretty_character(v: &CycloNum) -> String {
    if let Some(q) = v.to_rational() {
        return crate::arith::rational_to_string(&q);
    }
    for a in -12i64..=12 {
        for b in [-2i64, -1, 1, 2] {
            let cand = QuadInt::new(a, b);
            if cand.to_cyclo() == *v {
                return match (a, b) {
                    (0, 1) => "λ".into(),
                    (-1, -1) => "λ̄".into(),
                    _ => format!("{cand}"),
                };
            }
        }
    }
    v.to_string()
}
