//! Frame-component containers.
//!
//! All tensors are stored on a frame `e_1..e_n`:
//! - [`FrameVector`]: `X = Σ X_i e_i`
//! - [`Tensor02`]: `T(e_i, e_j)`
//! - [`Tensor11`]: `T(e_i) = Σ_j T[i][j] e_j`
//! - [`Tensor13`]: `T(e_i, e_j) e_k = Σ_l T[i][j][k][l] e_l`

use crate::expr::Expr;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameVector(pub Vec<Expr>);

impl FrameVector {
    pub fn zero(n: usize) -> Self {
        FrameVector(vec![Expr::zero(n); n])
    }

    /// The basis vector `e_index`.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[index] = Expr::one(n);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Expr] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Expr::is_zero)
    }

    pub fn scale(&self, f: &Expr) -> Self {
        FrameVector(self.0.iter().map(|c| c * f).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        FrameVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        FrameVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        FrameVector(self.0.iter().map(|a| -a).collect())
    }
}

impl std::ops::Index<usize> for FrameVector {
    type Output = Expr;
    fn index(&self, i: usize) -> &Expr {
        &self.0[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor02 {
    n: usize,
    data: Vec<Expr>,
}

impl Tensor02 {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Expr) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Tensor02 { n, data }
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| Expr::zero(n))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Expr::one(n) } else { Expr::zero(n) })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Expr {
        &self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[Expr] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Expr::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| (self.get(i, j) + self.get(j, i)).is_zero()))
    }

    /// Evaluates the form on two frame vectors.
    pub fn apply(&self, x: &FrameVector, y: &FrameVector) -> Expr {
        let n = self.n;
        let mut acc = Expr::zero(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Expr::zero(n);
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                row = row + self.get(i, j) * &y[j];
            }
            acc = acc + &x[i] * row;
        }
        acc
    }

    pub fn rows(&self) -> Vec<Vec<Expr>> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor11 {
    n: usize,
    data: Vec<Expr>,
}

impl Tensor11 {
    /// `f(i, j)` is the `e_j` coefficient of `T(e_i)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Expr) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Tensor11 { n, data }
    }

    pub fn from_images(images: &[FrameVector]) -> Self {
        let n = images.len();
        Self::from_fn(n, |i, j| images[i][j].clone())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Expr::one(n) } else { Expr::zero(n) })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Expr {
        &self.data[i * self.n + j]
    }

    /// `T(e_i)` as a frame vector.
    pub fn image(&self, i: usize) -> FrameVector {
        FrameVector(self.data[i * self.n..(i + 1) * self.n].to_vec())
    }

    pub fn apply(&self, x: &FrameVector) -> FrameVector {
        let n = self.n;
        let mut out = FrameVector::zero(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            out = out.add(&self.image(i).scale(&x[i]));
        }
        out
    }

    pub fn compose(&self, inner: &Tensor11) -> Tensor11 {
        let images: Vec<FrameVector> = (0..self.n).map(|i| self.apply(&inner.image(i))).collect();
        Tensor11::from_images(&images)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Expr::is_zero)
    }

    pub fn rows(&self) -> Vec<Vec<Expr>> {
        (0..self.n).map(|i| self.image(i).0).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor13 {
    n: usize,
    data: Vec<Expr>,
}

impl Tensor13 {
    /// `f(i, j, k, l)` is the `e_l` coefficient of `T(e_i, e_j) e_k`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize, usize, usize) -> Expr) -> Self {
        let mut data = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Tensor13 { n, data }
    }

    pub fn from_vectors(n: usize, mut f: impl FnMut(usize, usize, usize) -> FrameVector) -> Self {
        let mut data = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    data.extend(f(i, j, k).0);
                }
            }
        }
        Tensor13 { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Expr {
        let n = self.n;
        &self.data[((i * n + j) * n + k) * n + l]
    }

    /// `T(e_i, e_j) e_k`.
    pub fn vector(&self, i: usize, j: usize, k: usize) -> FrameVector {
        let n = self.n;
        let start = ((i * n + j) * n + k) * n;
        FrameVector(self.data[start..start + n].to_vec())
    }

    /// `T(X, Y) Z` for arbitrary frame vectors.
    pub fn apply(&self, x: &FrameVector, y: &FrameVector, z: &FrameVector) -> FrameVector {
        let n = self.n;
        let mut out = FrameVector::zero(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..n {
                    if z[k].is_zero() {
                        continue;
                    }
                    let w = &xy * &z[k];
                    out = out.add(&self.vector(i, j, k).scale(&w));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Expr::is_zero)
    }

    /// Indices `(i, j, k)` whose vector `T(e_i, e_j) e_k` is nonzero.
    pub fn nonzero_slots(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.vector(i, j, k).is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}
