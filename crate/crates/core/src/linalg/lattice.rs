use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::clear_denominators;
use super::{QMatrix, Rational};

/// Integer lattice given by a basis of column vectors in column Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    ambient_dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    /// Lattice spanned by the given independent integer columns, normalized.
    pub fn from_independent_columns(ambient_dim: usize, columns: Vec<Vec<BigInt>>) -> Self {
        IntLattice { ambient_dim, basis: column_hermite_form(columns) }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Hermite-form basis columns.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// An LLL-reduced basis of the same lattice (δ = 3/4).
    pub fn reduced_basis(&self) -> Vec<Vec<BigInt>> {
        lll_reduce(self.basis.clone())
    }

    pub fn basis_as_rationals(&self) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|c| c.iter().cloned().map(Rational::from_integer).collect()).collect()
    }

    /// Integer combination `Σ coeffs[i] * basis[i]` of arbitrary basis columns.
    pub fn combine(basis: &[Vec<BigInt>], coeffs: &[i64]) -> Vec<BigInt> {
        let dim = basis.first().map_or(0, Vec::len);
        let mut out = vec![BigInt::zero(); dim];
        for (col, &c) in basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            for (o, x) in out.iter_mut().zip(col) {
                *o += &c * x;
            }
        }
        out
    }
}

/// `{x ∈ ℤᴺ : L x = 0}` for a rational matrix `L`.
///
/// The rows of the RREF of `L` are scaled to integers; a unimodular column
/// transform `U` with `R U = [H | 0]` is then built, and the trailing columns
/// of `U` are a ℤ-basis of the saturated kernel.
pub fn integer_solution_lattice(l: &QMatrix) -> IntLattice {
    let n = l.cols();
    let (r, pivots) = l.rref();
    let rows: Vec<Vec<BigInt>> = (0..pivots.len()).map(|i| clear_denominators(r.row(i)).0).collect();
    let kernel = integer_kernel(&rows, n);
    IntLattice::from_independent_columns(n, kernel)
}

/// ℤ-basis of the integer kernel of a full-row-rank integer matrix.
fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    // u is stored by columns: u[j] is column j of U
    let mut u: Vec<Vec<BigInt>> =
        (0..n).map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let m = a.len();
    let mut k = 0;
    for i in 0..m {
        for j in k + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            // combine columns k and j so that row i gets gcd in column k and 0 in column j
            let x = a[i][k].clone();
            let y = a[i][j].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xg = &x / &g;
            let yg = &y / &g;
            // new_k = s*col_k + t*col_j ; new_j = -yg*col_k + xg*col_j  (det = s*xg + t*yg = 1)
            column_op(&mut a, k, j, &s, &t, &yg, &xg);
            column_op_cols(&mut u, k, j, &s, &t, &yg, &xg);
        }
        if !a[i][k].is_zero() {
            k += 1;
        }
    }
    u.split_off(k)
}

fn column_op(a: &mut [Vec<BigInt>], k: usize, j: usize, s: &BigInt, t: &BigInt, yg: &BigInt, xg: &BigInt) {
    for row in a.iter_mut() {
        let ck = row[k].clone();
        let cj = row[j].clone();
        row[k] = s * &ck + t * &cj;
        row[j] = xg * &cj - yg * &ck;
    }
}

fn column_op_cols(u: &mut [Vec<BigInt>], k: usize, j: usize, s: &BigInt, t: &BigInt, yg: &BigInt, xg: &BigInt) {
    let ck = u[k].clone();
    let cj = u[j].clone();
    u[k] = ck.iter().zip(&cj).map(|(a, b)| s * a + t * b).collect();
    u[j] = ck.iter().zip(&cj).map(|(a, b)| xg * b - yg * a).collect();
}

/// Column Hermite normal form of independent integer columns.
///
/// Result is lower echelon: each column's first nonzero entry (its pivot row)
/// is positive, pivot rows strictly increase, and entries of earlier columns
/// in a pivot row lie in `[0, pivot)`.
pub fn column_hermite_form(mut cols: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let r = cols.len();
    if r == 0 {
        return cols;
    }
    let n = cols[0].len();
    let mut k = 0;
    for i in 0..n {
        if k == r {
            break;
        }
        for j in k + 1..r {
            if cols[j][i].is_zero() {
                continue;
            }
            let x = cols[k][i].clone();
            let y = cols[j][i].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let xg = &x / &g;
            let yg = &y / &g;
            column_op_cols(&mut cols, k, j, &s, &t, &yg, &xg);
        }
        if cols[k][i].is_zero() {
            continue;
        }
        if cols[k][i].is_negative() {
            for x in cols[k].iter_mut() {
                *x = -x.clone();
            }
        }
        let p = cols[k][i].clone();
        for c in 0..k {
            let q = cols[c][i].div_floor(&p);
            if !q.is_zero() {
                let pk = cols[k].clone();
                for (x, y) in cols[c].iter_mut().zip(&pk) {
                    *x -= &q * y;
                }
            }
        }
        k += 1;
    }
    assert_eq!(k, r, "column_hermite_form: columns are dependent");
    cols
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let r = b.len();
    let mut mu = vec![vec![Rational::zero(); r]; r];
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(r);
    let mut norms = Vec::with_capacity(r);
    for i in 0..r {
        let bi: Vec<Rational> = b[i].iter().cloned().map(Rational::from_integer).collect();
        let mut v = bi.clone();
        for j in 0..i {
            let m = dot(&bi, &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &m * y;
            }
            mu[i][j] = m;
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (mu, norms)
}

/// LLL reduction with δ = 3/4 on independent integer columns.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let r = b.len();
    if r <= 1 {
        return b;
    }
    let delta = Rational::new(BigInt::from(3), BigInt::from(4));
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let (mut mu, mut norms) = gram_schmidt(&b);
    let mut k = 1;
    while k < r {
        size_reduce(&mut b, &mut mu, k, k - 1, &half);
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs < rhs {
            b.swap(k, k - 1);
            let gs = gram_schmidt(&b);
            mu = gs.0;
            norms = gs.1;
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                size_reduce(&mut b, &mut mu, k, l, &half);
            }
            k += 1;
        }
    }
    b
}

fn size_reduce(b: &mut [Vec<BigInt>], mu: &mut [Vec<Rational>], k: usize, l: usize, half: &Rational) {
    if mu[k][l].abs() <= *half {
        return;
    }
    let q = (&mu[k][l] + half).floor().to_integer();
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    let qr = Rational::from_integer(q);
    mu[k][l] -= &qr;
    let (upper, lower) = mu.split_at_mut(k);
    for (x, y) in lower[0][..l].iter_mut().zip(&upper[l][..l]) {
        *x -= &qr * y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_system_gives_standard_basis() {
        let lat = integer_solution_lattice(&QMatrix::zeros(1, 2));
        assert_eq!(lat.basis(), &[ints(&[1, 0]), ints(&[0, 1])]);
    }

    #[test]
    fn one_equation() {
        let lat = integer_solution_lattice(&QMatrix::from_ints(&[[1, -2]]));
        assert_eq!(lat.basis(), &[ints(&[2, 1])]);
    }

    #[test]
    fn saturation_not_just_cleared_denominators() {
        // kernel of [2, 4, 6] spanned over ℚ by (-2,1,0), (-3,0,1); integral basis must be saturated
        let lat = integer_solution_lattice(&QMatrix::from_ints(&[[2, 4, 6]]));
        assert_eq!(lat.rank(), 2);
        // (1, 1, -1) is in the integer kernel
        let target = ints(&[1, 1, -1]);
        let b = lat.basis();
        let mut found = false;
        for a in -3..=3 {
            for c in -3..=3 {
                if IntLattice::combine(b, &[a, c]) == target {
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn sylvester_system_for_rotation() {
        // XT = TX for T = [[0,-1],[1,0]]: (Tᵗ ⊗ I - I ⊗ T) vec X = 0
        let t = QMatrix::from_ints(&[[0, -1], [1, 0]]);
        let i2 = QMatrix::identity(2);
        let l = &t.transpose().kron(&i2) - &i2.kron(&t);
        let lat = integer_solution_lattice(&l);
        assert_eq!(lat.rank(), 2);
        let rat_basis = lat.basis_as_rationals();
        let span = crate::linalg::Subspace::span(4, &rat_basis);
        assert!(span.contains(&i2.vectorize()));
        assert!(span.contains(&t.vectorize()));
        for v in &rat_basis {
            assert!(l.apply(v).iter().all(|x| x == &rat(0)));
        }
    }

    #[test]
    fn hermite_form_is_canonical() {
        let a = column_hermite_form(vec![ints(&[2, 1, 0]), ints(&[0, 1, 3])]);
        let b = column_hermite_form(vec![ints(&[2, 2, 3]), ints(&[-2, -1, 0])]);
        assert_eq!(a, b);
    }

    #[test]
    fn lll_shortens() {
        let b = vec![ints(&[1, 0]), ints(&[1000, 1])];
        let red = lll_reduce(b);
        assert!(red.iter().all(|c| c.iter().all(|x| x.abs() <= BigInt::from(1))));
    }
}
