//! Finite Weyl groups as concrete element models.
//!
//! Classical types use (signed) permutations of `e_0..e_{n-1}`; exceptional types
//! use integer matrices on the simple-root basis. Generator `i` is the simple
//! reflection of standard node `i` (see [`crate::coxeter::FiniteType::diagram`]).
//!
//! | type | generators |
//! |------|------------|
//! | `A_{n-1}` | `s_i = (i, i+1)` on `n` points |
//! | `B_n`, `C_n` | `s_i = (i, i+1)` for `i < n-1`, `s_{n-1}` = sign change of `e_{n-1}` |
//! | `D_n` | `s_i = (i, i+1)` for `i < n-1`, `s_{n-1}` = reflection in `e_{n-2}+e_{n-1}` |

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::coxeter::{Family, FiniteType};

/// Group element. Signed models store `w[i] = ±(j+1)` for `w(e_i) = ±e_j`;
/// the matrix model stores a row-major matrix whose column `j` is `w(α_j)`.
pub type Elem = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Model {
    /// Permutations of `n` points (type `A_{n-1}`).
    Perm(usize),
    /// Signed permutations of `n` coordinates, `d` selecting type `D_n`.
    Signed { n: usize, d: bool },
    /// Integer matrices on the root lattice.
    Matrix { cartan: Vec<Vec<i32>> },
}

#[derive(Debug)]
pub struct Group {
    pub ty: FiniteType,
    model: Model,
    gens: Vec<Elem>,
    elements: once_cell::sync::OnceCell<Vec<Elem>>,
}

/// Integer Cartan matrix `c[i][j] = <α_j, α_i^∨>` for the standard diagram.
fn cartan(ty: FiniteType) -> Vec<Vec<i32>> {
    let d = ty.diagram();
    let n = ty.rank;
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        for j in 0..n {
            if i == j {
                continue;
            }
            c[i][j] = match d.bond(i, j) {
                2 => 0,
                3 => -1,
                // node i is long when i < j for the heavy bonds in standard order
                4 => if i < j { -1 } else { -2 },
                6 => if i < j { -1 } else { -3 },
                _ => panic!("non-crystallographic bond"),
            };
        }
    }
    c
}

impl Group {
    pub fn new(ty: FiniteType) -> Self {
        let n = ty.rank;
        let model = match ty.family {
            Family::A => Model::Perm(n + 1),
            Family::B | Family::C => Model::Signed { n, d: false },
            Family::D => Model::Signed { n, d: true },
            _ => Model::Matrix { cartan: cartan(ty) },
        };
        let mut g = Group { ty, model, gens: Vec::new(), elements: Default::default() };
        g.gens = (0..n).map(|i| g.make_gen(i)).collect();
        g
    }

    /// Shared instance per type (`C_n` shares the `B_n` model).
    pub fn get(ty: FiniteType) -> Arc<Group> {
        static CACHE: Lazy<Mutex<HashMap<FiniteType, Arc<Group>>>> = Lazy::new(Default::default);
        let key = if ty.family == Family::C { FiniteType::new(Family::B, ty.rank) } else { ty };
        CACHE.lock().unwrap().entry(key).or_insert_with(|| Arc::new(Group::new(key))).clone()
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// Number of points or coordinates the element acts on.
    pub fn degree(&self) -> usize {
        match &self.model {
            Model::Perm(n) => *n,
            Model::Signed { n, .. } => *n,
            Model::Matrix { cartan } => cartan.len(),
        }
    }

    pub fn is_signed(&self) -> bool {
        !matches!(self.model, Model::Matrix { .. })
    }

    fn make_gen(&self, i: usize) -> Elem {
        match &self.model {
            Model::Perm(n) => {
                let mut w: Elem = (1..=*n as i32).collect();
                w.swap(i, i + 1);
                w
            }
            Model::Signed { n, d } => {
                let n = *n;
                let mut w: Elem = (1..=n as i32).collect();
                if i + 1 < n {
                    w.swap(i, i + 1);
                } else if !d {
                    w[n - 1] = -(n as i32);
                } else {
                    w[n - 2] = -(n as i32);
                    w[n - 1] = -(n as i32 - 1);
                }
                w
            }
            Model::Matrix { cartan } => {
                let n = cartan.len();
                let mut m = vec![0; n * n];
                for r in 0..n {
                    m[r * n + r] = 1;
                }
                for j in 0..n {
                    m[i * n + j] -= cartan[i][j];
                }
                m
            }
        }
    }

    pub fn gen(&self, i: usize) -> &Elem {
        &self.gens[i]
    }

    pub fn identity(&self) -> Elem {
        match &self.model {
            Model::Matrix { cartan } => {
                let n = cartan.len();
                let mut m = vec![0; n * n];
                (0..n).for_each(|r| m[r * n + r] = 1);
                m
            }
            _ => (1..=self.degree() as i32).collect(),
        }
    }

    /// Product `a b` (apply `b` first).
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match &self.model {
            Model::Matrix { cartan } => {
                let n = cartan.len();
                let mut m = vec![0; n * n];
                for r in 0..n {
                    for k in 0..n {
                        let x = a[r * n + k];
                        if x != 0 {
                            for c in 0..n {
                                m[r * n + c] += x * b[k * n + c];
                            }
                        }
                    }
                }
                m
            }
            _ => b
                .iter()
                .map(|&x| {
                    let y = a[(x.unsigned_abs() - 1) as usize];
                    if x < 0 {
                        -y
                    } else {
                        y
                    }
                })
                .collect(),
        }
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        match &self.model {
            Model::Matrix { .. } => {
                // Weyl group elements have finite order; invert by powering.
                let mut p = a.clone();
                let id = self.identity();
                let mut prev = id.clone();
                while p != id {
                    prev = p.clone();
                    p = self.mul(&p, a);
                }
                prev
            }
            _ => {
                let mut w = vec![0; a.len()];
                for (i, &x) in a.iter().enumerate() {
                    let j = (x.unsigned_abs() - 1) as usize;
                    w[j] = if x < 0 { -(i as i32 + 1) } else { i as i32 + 1 };
                }
                w
            }
        }
    }

    pub fn word(&self, word: &[usize]) -> Elem {
        word.iter().fold(self.identity(), |acc, &i| self.mul(&acc, &self.gens[i]))
    }

    /// Coordinates of the simple root `α_i` in the model's vector space.
    fn simple_root(&self, i: usize) -> Vec<i32> {
        let k = self.degree();
        let mut v = vec![0; k];
        match &self.model {
            Model::Perm(_) => {
                v[i] = 1;
                v[i + 1] = -1;
            }
            Model::Signed { n, d } => {
                if i + 1 < *n {
                    v[i] = 1;
                    v[i + 1] = -1;
                } else if !d {
                    v[i] = 1;
                } else {
                    v[i - 1] = 1;
                    v[i] = 1;
                }
            }
            Model::Matrix { .. } => v[i] = 1,
        }
        v
    }

    fn apply(&self, w: &Elem, v: &[i32]) -> Vec<i32> {
        let k = v.len();
        let mut out = vec![0; k];
        match &self.model {
            Model::Matrix { .. } => {
                for r in 0..k {
                    out[r] = (0..k).map(|c| w[r * k + c] * v[c]).sum();
                }
            }
            _ => {
                for (i, &x) in v.iter().enumerate() {
                    let y = w[i];
                    let j = (y.unsigned_abs() - 1) as usize;
                    out[j] += if y < 0 { -x } else { x };
                }
            }
        }
        out
    }

    fn is_positive(&self, v: &[i32]) -> bool {
        match &self.model {
            Model::Matrix { .. } => v.iter().all(|&x| x >= 0),
            _ => v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0),
        }
    }

    /// `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i)` is negative.
    pub fn is_right_descent(&self, w: &Elem, i: usize) -> bool {
        !self.is_positive(&self.apply(w, &self.simple_root(i)))
    }

    /// A reduced word, built by stripping right descents.
    pub fn reduced_word(&self, w: &Elem) -> Vec<usize> {
        let mut w = w.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 0..self.rank() {
                if self.is_right_descent(&w, i) {
                    w = self.mul(&w, &self.gens[i]);
                    rev.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    pub fn length(&self, w: &Elem) -> usize {
        self.reduced_word(w).len()
    }

    /// `det(q - w)` on the reflection representation, as integer coefficients
    /// (constant term first).
    pub fn char_poly(&self, w: &Elem) -> Vec<i64> {
        match &self.model {
            Model::Matrix { cartan } => matrix_char_poly(w, cartan.len()),
            Model::Perm(_) => {
                let (pos, _) = self.signed_cycle_type(w);
                let mut p = vec![1i64];
                for l in pos {
                    // (q^l - 1)
                    p = poly_mul(&p, &cyclic(l, -1));
                }
                // divide by (q - 1)
                let mut out = vec![0i64; p.len() - 1];
                let mut carry = 0i64;
                for k in (1..p.len()).rev() {
                    carry += p[k];
                    out[k - 1] = carry;
                }
                out
            }
            Model::Signed { .. } => {
                let (pos, neg) = self.signed_cycle_type(w);
                let mut p = vec![1i64];
                for l in pos {
                    p = poly_mul(&p, &cyclic(l, -1));
                }
                for l in neg {
                    p = poly_mul(&p, &cyclic(l, 1));
                }
                p
            }
        }
    }

    /// Cycle lengths split by the sign product along each cycle, both sorted
    /// decreasingly. For plain permutations all cycles are positive.
    pub fn signed_cycle_type(&self, w: &Elem) -> (Vec<usize>, Vec<usize>) {
        assert!(self.is_signed());
        let n = w.len();
        let mut seen = vec![false; n];
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut sign = 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                let y = w[x];
                if y < 0 {
                    sign = -sign;
                }
                x = (y.unsigned_abs() - 1) as usize;
                len += 1;
            }
            if sign > 0 {
                pos.push(len);
            } else {
                neg.push(len);
            }
        }
        pos.sort_unstable_by(|a, b| b.cmp(a));
        neg.sort_unstable_by(|a, b| b.cmp(a));
        (pos, neg)
    }

    /// For a signed permutation whose cycles are all positive and of even length,
    /// whether it is conjugate to the standard representative under the even
    /// signed permutations. The standard representative cycles
    /// `e_p -> e_{p+1} -> .. -> e_p` on consecutive blocks, longest first.
    pub fn split_parity(&self, w: &Elem) -> bool {
        let n = w.len();
        let mut seen = vec![false; n];
        let mut cycles: Vec<Vec<i32>> = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            // orbit of +e_s as signed basis vectors
            let mut orbit = Vec::new();
            let mut v = s as i32 + 1;
            loop {
                let idx = (v.unsigned_abs() - 1) as usize;
                if seen[idx] {
                    break;
                }
                seen[idx] = true;
                orbit.push(v);
                let y = w[idx];
                v = if v < 0 { -y } else { y };
            }
            cycles.push(orbit);
        }
        cycles.sort_by(|a, b| b.len().cmp(&a.len()));
        let negs = cycles.iter().flatten().filter(|&&v| v < 0).count();
        negs % 2 == 0
    }

    /// All elements, breadth-first from the identity (cached).
    pub fn elements(&self) -> &[Elem] {
        self.elements.get_or_init(|| {
            let mut seen: HashMap<Elem, ()> = HashMap::new();
            let id = self.identity();
            seen.insert(id.clone(), ());
            let mut out = vec![id];
            let mut k = 0;
            while k < out.len() {
                for g in &self.gens {
                    let x = self.mul(&out[k], g);
                    if seen.insert(x.clone(), ()).is_none() {
                        out.push(x);
                    }
                }
                k += 1;
            }
            out
        })
    }
}

/// Subgroup generated by explicit elements of `g`, enumerated by closure.
pub fn closure(g: &Group, gens: &[Elem]) -> Vec<Elem> {
    let mut seen: HashMap<Elem, ()> = HashMap::new();
    let id = g.identity();
    seen.insert(id.clone(), ());
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        for s in gens {
            let x = g.mul(&out[k], s);
            if seen.insert(x.clone(), ()).is_none() {
                out.push(x);
            }
        }
        k += 1;
    }
    out
}

/// `q^l + c`.
fn cyclic(l: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; l + 1];
    v[0] = c;
    v[l] = 1;
    v
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `det(q I - M)` by Faddeev–LeVerrier; integer division is exact.
fn matrix_char_poly(m: &[i32], n: usize) -> Vec<i64> {
    let a: Vec<i128> = m.iter().map(|&x| x as i128).collect();
    let mul = |x: &[i128], y: &[i128]| {
        let mut out = vec![0i128; n * n];
        for r in 0..n {
            for k in 0..n {
                for c in 0..n {
                    out[r * n + c] += x[r * n + k] * y[k * n + c];
                }
            }
        }
        out
    };
    // coefficients c_n = 1, c_{n-k}
    let mut coef = vec![0i128; n + 1];
    coef[n] = 1;
    let mut mk = vec![0i128; n * n]; // M_0 = 0
    for k in 1..=n {
        let mut next = mul(&a, &mk);
        for r in 0..n {
            next[r * n + r] += coef[n - k + 1];
        }
        mk = next;
        let am = mul(&a, &mk);
        let tr: i128 = (0..n).map(|r| am[r * n + r]).sum();
        coef[n - k] = -tr / k as i128;
    }
    coef.into_iter().map(|c| c as i64).collect()
}
