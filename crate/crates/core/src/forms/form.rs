use num_complex::Complex64;

use super::algebra::SmoothAlgebra;
use super::cmatrix::{solve_linear_complex, CMatrix};
use super::lie::LieAlgebra;
use crate::error::{Error, Result};

/// Strictly increasing multi-indices of length k drawn from 0..dim, in
/// lexicographic order — the order in which form and cochain coefficients
/// are stored.
pub fn multi_indices(dim: usize, k: usize) -> Vec<Vec<usize>> {
    if k > dim {
        return vec![];
    }
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + dim - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn index_rank(dim: usize, idx: &[usize]) -> usize {
    // lexicographic rank among increasing multi-indices; dims are tiny so a
    // scan is fine
    multi_indices(dim, idx.len())
        .iter()
        .position(|m| m == idx)
        .expect("valid multi-index")
}

/// Sort a tuple of indices, returning (sign, sorted); None when an index
/// repeats.
fn sort_with_sign(tuple: &[usize]) -> Option<(f64, Vec<usize>)> {
    let mut v = tuple.to_vec();
    let mut sign = 1.0;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v))
    }
}

/// An element of M_n(A) ⊗ Λᵏ𝔤*: an antisymmetric k-linear assignment of
/// matrix coefficients, stored on strictly increasing multi-indices.
#[derive(Clone, Debug)]
pub struct Form {
    gdim: usize,
    n: usize,
    degree: usize,
    coeffs: Vec<CMatrix>,
}

impl Form {
    pub fn zero(gdim: usize, n: usize, degree: usize) -> Result<Self> {
        if degree > gdim {
            return Err(Error::validation(format!(
                "form degree {degree} exceeds the Lie algebra dimension {gdim}"
            )));
        }
        let count = multi_indices(gdim, degree).len();
        Ok(Form {
            gdim,
            n,
            degree,
            coeffs: vec![CMatrix::zeros(n); count],
        })
    }

    /// A degree-0 form from an algebra element.
    pub fn scalar(gdim: usize, value: CMatrix) -> Self {
        Form {
            gdim,
            n: value.size(),
            degree: 0,
            coeffs: vec![value],
        }
    }

    pub fn from_coefficients(
        gdim: usize,
        degree: usize,
        coeffs: Vec<CMatrix>,
    ) -> Result<Self> {
        let count = multi_indices(gdim, degree).len();
        if coeffs.len() != count {
            return Err(Error::validation(format!(
                "degree-{degree} form over dim {gdim} needs {count} coefficients, got {}",
                coeffs.len()
            )));
        }
        if degree > gdim {
            return Err(Error::validation("form degree exceeds algebra dimension"));
        }
        let n = coeffs.first().map_or(0, CMatrix::size);
        if coeffs.iter().any(|c| c.size() != n) {
            return Err(Error::validation("coefficient sizes differ"));
        }
        Ok(Form {
            gdim,
            n,
            degree,
            coeffs,
        })
    }

    pub fn gdim(&self) -> usize {
        self.gdim
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient on an increasing multi-index.
    pub fn coeff(&self, idx: &[usize]) -> &CMatrix {
        &self.coeffs[index_rank(self.gdim, idx)]
    }

    pub fn coeff_mut(&mut self, idx: &[usize]) -> &mut CMatrix {
        let r = index_rank(self.gdim, idx);
        &mut self.coeffs[r]
    }

    pub fn coefficients(&self) -> &[CMatrix] {
        &self.coeffs
    }

    /// Evaluate on an arbitrary tuple; permuted arguments pick up the sign,
    /// repeated arguments give zero.
    pub fn eval(&self, tuple: &[usize]) -> CMatrix {
        assert_eq!(tuple.len(), self.degree, "arity mismatch");
        match sort_with_sign(tuple) {
            None => CMatrix::zeros(self.n),
            Some((sign, sorted)) => self.coeff(&sorted).scale(Complex64::new(sign, 0.0)),
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::validation("cannot add forms of different degree"));
        }
        Ok(Form {
            gdim: self.gdim,
            n: self.n,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Form {
        Form {
            gdim: self.gdim,
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(CMatrix::max_abs).fold(0.0, f64::max)
    }

    /// Left multiplication by an algebra element, a·ω.
    pub fn left_mul(&self, a: &CMatrix) -> Form {
        Form {
            gdim: self.gdim,
            n: self.n,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|m| a.mul(m)).collect(),
        }
    }

    fn check_compatible(&self, other: &Form) -> Result<()> {
        if self.gdim != other.gdim || self.n != other.n {
            return Err(Error::validation(
                "forms live over different algebras or matrix sizes",
            ));
        }
        Ok(())
    }
}

/// The Chevalley–Eilenberg differential with algebra coefficients:
///
/// dω(X₀..X_k) = Σᵢ (−1)ⁱ δ_{Xᵢ} ω(..X̂ᵢ..)
///             + Σ_{i<j} (−1)^{i+j} ω(`[X_i,X_j]`, ..X̂ᵢ..X̂ⱼ..)
///
/// For a degree-0 form this is da(X) = δ_X(a). A top-degree input is an
/// explicit error: there is no degree dim+1 slot to hold the result.
pub fn ce_differential(w: &Form, alg: &SmoothAlgebra) -> Result<Form> {
    let gdim = alg.lie().dim();
    if w.gdim() != gdim || w.matrix_size() != alg.matrix_size() {
        return Err(Error::validation("form does not match the algebra"));
    }
    if w.degree() >= gdim {
        return Err(Error::validation(format!(
            "cannot differentiate a top-degree ({}) form over a {gdim}-dimensional algebra",
            w.degree()
        )));
    }
    let k = w.degree();
    let mut out = Form::zero(gdim, w.matrix_size(), k + 1)?;
    for idx in multi_indices(gdim, k + 1) {
        let mut acc = CMatrix::zeros(w.matrix_size());
        for (pos, &xi) in idx.iter().enumerate() {
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != pos)
                .map(|(_, &v)| v)
                .collect();
            let term = alg.derivation(xi, &w.eval(&rest));
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            acc = acc.add(&term.scale(Complex64::new(sign, 0.0)));
        }
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != a && q != b)
                    .map(|(_, &v)| v)
                    .collect();
                let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                for m in 0..gdim {
                    let c = alg.lie().c(idx[a], idx[b], m);
                    if c == 0.0 {
                        continue;
                    }
                    let mut tuple = Vec::with_capacity(k + 1);
                    tuple.push(m);
                    tuple.extend_from_slice(&rest);
                    let term = w.eval(&tuple);
                    acc = acc.add(&term.scale(Complex64::new(sign * c, 0.0)));
                }
            }
        }
        *out.coeff_mut(&idx) = acc;
    }
    Ok(out)
}

/// Shuffle-signed wedge with matrix multiplication of coefficients.
pub fn wedge(w1: &Form, w2: &Form) -> Result<Form> {
    if w1.gdim() != w2.gdim() || w1.matrix_size() != w2.matrix_size() {
        return Err(Error::validation(
            "wedge operands live over different algebras or matrix sizes",
        ));
    }
    let gdim = w1.gdim();
    let (k1, k2) = (w1.degree(), w2.degree());
    if k1 + k2 > gdim {
        return Ok(Form::zero(gdim, w1.matrix_size(), gdim)?
            .scale(Complex64::ZERO));
    }
    let mut out = Form::zero(gdim, w1.matrix_size(), k1 + k2)?;
    for idx in multi_indices(gdim, k1 + k2) {
        let mut acc = CMatrix::zeros(w1.matrix_size());
        for first in multi_indices(idx.len(), k1) {
            // `first` selects positions inside idx for w1; the complement
            // goes to w2. The shuffle sign counts the crossings.
            let j: Vec<usize> = first.iter().map(|&p| idx[p]).collect();
            let kset: Vec<usize> = (0..idx.len())
                .filter(|p| !first.contains(p))
                .map(|p| idx[p])
                .collect();
            let mut inversions = 0usize;
            for &a in &j {
                for &b in &kset {
                    if a > b {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            let prod = w1.coeff(&j).mul(w2.coeff(&kset));
            acc = acc.add(&prod.scale(Complex64::new(sign, 0.0)));
        }
        *out.coeff_mut(&idx) = acc;
    }
    Ok(out)
}

/// A scalar-valued cochain in Λᵏ𝔤*.
#[derive(Clone, Debug)]
pub struct Cochain {
    gdim: usize,
    degree: usize,
    coeffs: Vec<Complex64>,
}

impl Cochain {
    pub fn zero(gdim: usize, degree: usize) -> Result<Self> {
        if degree > gdim {
            return Err(Error::validation("cochain degree exceeds dimension"));
        }
        Ok(Cochain {
            gdim,
            degree,
            coeffs: vec![Complex64::ZERO; multi_indices(gdim, degree).len()],
        })
    }

    pub fn constant(gdim: usize, value: Complex64) -> Self {
        Cochain {
            gdim,
            degree: 0,
            coeffs: vec![value],
        }
    }

    pub fn gdim(&self) -> usize {
        self.gdim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, idx: &[usize]) -> Complex64 {
        self.coeffs[index_rank(self.gdim, idx)]
    }

    pub fn coeff_mut(&mut self, idx: &[usize]) -> &mut Complex64 {
        let r = index_rank(self.gdim, idx);
        &mut self.coeffs[r]
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, tuple: &[usize]) -> Complex64 {
        match sort_with_sign(tuple) {
            None => Complex64::ZERO,
            Some((sign, sorted)) => self.coeff(&sorted) * sign,
        }
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        if self.gdim != other.gdim || self.degree != other.degree {
            return Err(Error::validation("cochain shape mismatch"));
        }
        Ok(Cochain {
            gdim: self.gdim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Cochain {
        Cochain {
            gdim: self.gdim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Pullback along a linear map of the Lie algebra given by its matrix B
    /// on the basis: (B*ω)(eᵢ₁..eᵢₖ) = ω(Beᵢ₁, .., Beᵢₖ).
    pub fn pullback(&self, b: &CMatrix) -> Result<Cochain> {
        if b.size() != self.gdim {
            return Err(Error::validation("pullback matrix size mismatch"));
        }
        let mut out = Cochain::zero(self.gdim, self.degree)?;
        for target in multi_indices(self.gdim, self.degree) {
            let mut acc = Complex64::ZERO;
            for source in multi_indices(self.gdim, self.degree) {
                // minor of B with rows `source`, columns `target`
                let k = self.degree;
                let mut det = Complex64::ZERO;
                // tiny determinants (k <= 3): Leibniz expansion over permutations
                let perms = permutations(k);
                for (sign, perm) in perms {
                    let mut prod = Complex64::new(sign, 0.0);
                    for (row_pos, &col_pos) in perm.iter().enumerate() {
                        prod *= b[(source[row_pos], target[col_pos])];
                    }
                    det += prod;
                }
                acc += det * self.coeff(&source);
            }
            *out.coeff_mut(&target) = acc;
        }
        Ok(out)
    }
}

fn permutations(k: usize) -> Vec<(f64, Vec<usize>)> {
    fn rec(current: &mut Vec<usize>, used: &mut Vec<bool>, sign: f64, out: &mut Vec<(f64, Vec<usize>)>) {
        let k = used.len();
        if current.len() == k {
            out.push((sign, current.clone()));
            return;
        }
        for v in 0..k {
            if used[v] {
                continue;
            }
            let inversions = current.iter().filter(|&&u| u > v).count();
            let s = if inversions % 2 == 0 { sign } else { -sign };
            used[v] = true;
            current.push(v);
            rec(current, used, s, out);
            current.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], 1.0, &mut out);
    out
}

/// Scalar Chevalley–Eilenberg differential (trivial coefficients):
/// dω(X₀..X_k) = Σ_{i<j} (−1)^{i+j} ω(`[X_i,X_j]`, ..X̂ᵢ..X̂ⱼ..).
/// A top-degree cochain differentiates to zero (there are no higher slots).
pub fn scalar_ce_differential(w: &Cochain, lie: &LieAlgebra) -> Result<Cochain> {
    let gdim = lie.dim();
    if w.gdim() != gdim {
        return Err(Error::validation("cochain does not match the algebra"));
    }
    if w.degree() >= gdim {
        return Cochain::zero(gdim, gdim);
    }
    let k = w.degree();
    let mut out = Cochain::zero(gdim, k + 1)?;
    for idx in multi_indices(gdim, k + 1) {
        let mut acc = Complex64::ZERO;
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(q, _)| q != a && q != b)
                    .map(|(_, &v)| v)
                    .collect();
                let sign = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                for m in 0..gdim {
                    let c = lie.c(idx[a], idx[b], m);
                    if c == 0.0 {
                        continue;
                    }
                    let mut tuple = Vec::with_capacity(k + 1);
                    tuple.push(m);
                    tuple.extend_from_slice(&rest);
                    acc += w.eval(&tuple) * (sign * c);
                }
            }
        }
        *out.coeff_mut(&idx) = acc;
    }
    Ok(out)
}

/// Largest coefficient of dω: zero means closed.
pub fn closedness_defect(w: &Cochain, lie: &LieAlgebra) -> Result<f64> {
    Ok(scalar_ce_differential(w, lie)?.max_abs())
}

/// Closedness to a tolerance.
pub fn closedness_check(w: &Cochain, lie: &LieAlgebra, tol: f64) -> Result<bool> {
    Ok(closedness_defect(w, lie)? <= tol)
}

/// Decide whether two closed cochains differ by an exact one: solves
/// dλ = w1 − w2 for a (k−1)-cochain λ by exact linear algebra on the tiny
/// cochain spaces and reports the residual.
pub fn cohomologous_defect(w1: &Cochain, w2: &Cochain, lie: &LieAlgebra) -> Result<f64> {
    if w1.degree() != w2.degree() || w1.gdim() != w2.gdim() {
        return Err(Error::validation("cochain shape mismatch"));
    }
    let diff = w1.sub(w2)?;
    if diff.degree() == 0 {
        // no (-1)-cochains: exact iff zero
        return Ok(diff.max_abs());
    }
    let gdim = lie.dim();
    let k = diff.degree();
    let rows_idx = multi_indices(gdim, k);
    let cols_idx = multi_indices(gdim, k - 1);
    let mut a: Vec<Vec<Complex64>> = Vec::with_capacity(rows_idx.len());
    for _ in &rows_idx {
        a.push(vec![Complex64::ZERO; cols_idx.len()]);
    }
    // Column c of the matrix is d(basis cochain c) expressed on rows.
    for (cpos, cidx) in cols_idx.iter().enumerate() {
        let mut basis = Cochain::zero(gdim, k - 1)?;
        *basis.coeff_mut(cidx) = Complex64::ONE;
        let db = scalar_ce_differential(&basis, lie)?;
        for (rpos, ridx) in rows_idx.iter().enumerate() {
            a[rpos][cpos] = db.coeff(ridx);
        }
    }
    let b: Vec<Complex64> = rows_idx.iter().map(|r| diff.coeff(r)).collect();
    match solve_linear_complex(&a, &b, 1e-9) {
        None => Ok(f64::INFINITY),
        Some(x) => {
            // residual of the found solution
            let mut res: f64 = 0.0;
            for (rpos, row) in a.iter().enumerate() {
                let mut lhs = Complex64::ZERO;
                for (cpos, v) in row.iter().enumerate() {
                    lhs += v * x[cpos];
                }
                res = res.max((lhs - b[rpos]).norm());
            }
            Ok(res)
        }
    }
}
