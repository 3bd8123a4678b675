use std::fmt;

use super::{EpwError, Sextic};
use crate::arith::{squarefree_decomposition, CycloNum, Field, MultiPoly, UniPoly};
use crate::klein::CMat;
use crate::linalg::Matrix;

/// A binary form `Σ c_i s^{d−i} t^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `coeffs()[i]` multiplies `s^{d−i} t^i`.
    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    /// The polynomial in `u = s/t` obtained by setting `t = 1`.
    pub fn dehomogenize(&self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiplicity of the root `[s:t] = [1:0]`, lost by dehomogenizing.
    pub fn multiplicity_at_infinity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Pairs `(number of distinct roots, multiplicity)` over the algebraic closure.
    pub fn root_pattern(&self) -> Result<Vec<(usize, u32)>, EpwError> {
        if self.is_zero() {
            return Err(EpwError::LineInSextic);
        }
        let mut out: Vec<(usize, u32)> = squarefree_decomposition(&self.dehomogenize())
            .unwrap_or_default()
            .into_iter()
            .filter_map(|(p, m)| p.degree().filter(|&d| d > 0).map(|d| (d, m)))
            .collect();
        let inf = self.multiplicity_at_infinity();
        if inf > 0 {
            out.push((1, inf as u32));
        }
        Ok(out)
    }

    pub fn distinct_roots(&self) -> Result<usize, EpwError> {
        Ok(self.root_pattern()?.iter().map(|&(n, _)| n).sum())
    }

    pub fn is_squarefree(&self) -> Result<bool, EpwError> {
        Ok(self.root_pattern()?.iter().all(|&(_, m)| m == 1))
    }
}

impl<F: Field + fmt::Display> fmt::Display for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            let negative = text.starts_with('-') && !text[1..].contains(['+', '-']);
            if negative {
                text.remove(0);
            }
            if text.contains(['+', '-']) {
                text = format!("({text})");
            }
            let mut vars = Vec::new();
            for (name, e) in [("s", d - i), ("t", i)] {
                match e {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{e}")),
                }
            }
            let body = match (text.as_str(), vars.is_empty()) {
                (_, true) => text.clone(),
                ("1", false) => vars.join("*"),
                _ => format!("{text}*{}", vars.join("*")),
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `f(s·p + t·q)` for independent points `p`, `q`.
pub fn restrict_to_line<F: Field>(f: &Sextic, p: &[F], q: &[F]) -> Result<BinaryForm<F>, EpwError> {
    let n = f.nvars();
    assert!(p.len() == n && q.len() == n);
    if Matrix::from_rows(vec![p.to_vec(), q.to_vec()]).rank() < 2 {
        return Err(EpwError::DependentPoints);
    }
    let s = MultiPoly::<F>::var(2, 0);
    let t = MultiPoly::<F>::var(2, 1);
    let forms: Vec<MultiPoly<F>> = p.iter().zip(q).map(|(a, b)| s.scale(a).add(&t.scale(b))).collect();
    let g = f.map_coeffs(F::from_rational).substitute(&forms);
    let d = f.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![F::zero(); d + 1];
    for (m, c) in g.terms() {
        let e = m.exps();
        coeffs[e[1] as usize] = c.clone();
    }
    Ok(BinaryForm::new(coeffs))
}

/// Scales a projective point so its first nonzero coordinate is 1.
pub fn normalize_point<F: Field>(v: &[F]) -> Result<Vec<F>, EpwError> {
    let lead = v.iter().find(|x| !x.is_zero()).ok_or(EpwError::ZeroVector)?.inv();
    Ok(v.iter().map(|x| x.clone() * &lead).collect())
}

/// An eigenspace of an element acting on `V₆`.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    /// The eigenvalue is `ζ_n^k` for this `k`, with `n` the element order.
    pub exponent: u32,
    pub eigenvalue: CycloNum,
    /// Basis vectors as columns, each normalized.
    pub basis: CMat,
}

impl Eigenspace {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn vector(&self, i: usize) -> Vec<CycloNum> {
        self.basis.col(i)
    }
}

/// Eigenspaces of `g` (of order `order`) on `V₆`; their projectivizations
/// make up the fixed locus of `g` on `P(V₆)`.
pub fn fixed_locus(g: &CMat, order: u32) -> Vec<Eigenspace> {
    let n = g.rows();
    (0..order)
        .filter_map(|k| {
            let lambda = CycloNum::zeta(order, k as i64);
            let shifted = g.sub(&CMat::identity(n).scale(&lambda));
            let ker = shifted.kernel_basis();
            if ker.cols() == 0 {
                return None;
            }
            let cols: Vec<Vec<CycloNum>> =
                (0..ker.cols()).map(|c| normalize_point(&ker.col(c)).expect("kernel vectors are nonzero")).collect();
            let basis = CMat::from_fn(n, cols.len(), |r, c| cols[c][r].clone());
            Some(Eigenspace { exponent: k, eigenvalue: lambda, basis })
        })
        .collect()
}

/// Points of `Fix(g) ∩ Y`, split by component of the fixed locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointCount {
    /// Isolated fixed points lying on the sextic.
    pub isolated: usize,
    /// Number of distinct points on each fixed line.
    pub on_lines: Vec<usize>,
}

impl FixedPointCount {
    pub fn total(&self) -> usize {
        self.isolated + self.on_lines.iter().sum::<usize>()
    }
}

/// Counts `#(Fix(g) ∩ Y)` for an element whose eigenspaces have dimension at most 2.
/// Otherwise reports the dimension of the positive-dimensional part.
pub fn fixed_point_count(f: &Sextic, g: &CMat, order: u32) -> Result<FixedPointCount, EpwError> {
    let fc = f.map_coeffs(CycloNum::from_rational);
    let mut out = FixedPointCount { isolated: 0, on_lines: Vec::new() };
    for space in fixed_locus(g, order) {
        match space.dim() {
            1 => {
                if fc.eval(&space.vector(0)).is_zero() {
                    out.isolated += 1;
                }
            }
            2 => {
                let form = restrict_to_line(f, &space.vector(0), &space.vector(1))?;
                out.on_lines.push(form.distinct_roots()?);
            }
            dim => {
                // P(space) ∩ Y is a hypersurface of P(space) unless f vanishes on it
                let vars: Vec<MultiPoly<CycloNum>> = (0..6)
                    .map(|r| (0..dim).fold(MultiPoly::zero(dim), |acc, c| acc.add(&MultiPoly::var(dim, c).scale(&space.basis[(r, c)]))))
                    .collect();
                let inside = fc.substitute(&vars).is_zero();
                return Err(EpwError::PositiveDimensional { dim: if inside { dim - 1 } else { dim - 2 } });
            }
        }
    }
    Ok(out)
}
