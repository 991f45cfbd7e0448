//! Commuting-matrix models of punctual subschemes of the plane: pairs
//! `(M_x, M_y)` built from ideals, the cyclicity test, duality, module
//! isomorphism and the existence of a compatible symplectic form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Symbolic determinants are attempted up to this matrix size.
pub const SYMBOLIC_MAX_DIM: usize = 8;
/// Symbolic determinants are attempted up to this many parameters.
pub const SYMBOLIC_MAX_PARAMS: usize = 10;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Dense matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = q(v);
            }
        }
        m
    }

    /// `E_{ij}` in 1-based indices, as printed in matrix notation.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i - 1, j - 1)] = BigRational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_skew(&self) -> bool {
        self == &-self.transpose()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }

    /// Columns side by side.
    pub fn hstack(&self, other: &QMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    fn row_vecs(&self) -> Vec<Vec<BigRational>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[_]>::to_vec)
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.row_vecs(), self.cols).1.len()
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let piv = a[k][k].clone();
            det *= &piv;
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &piv;
                let (top, bottom) = a.split_at_mut(i);
                for (x, y) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (rows, piv) = rref(aug.row_vecs(), 2 * n);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = rows[i][n + j].clone();
            }
        }
        Some(inv)
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        nullspace(self.row_vecs(), self.cols)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Parse("ragged matrix rows".into()));
            }
            for (j, s) in row.iter().enumerate() {
                m[(i, j)] = s
                    .trim()
                    .parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
            }
        }
        Ok(m)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl std::ops::Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl std::ops::Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self + &-rhs
    }
}

impl std::ops::Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl std::ops::Neg for QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        -&self
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_strings())
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        QMatrix::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

fn nullspace(rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let (red, piv) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &p) in red.iter().zip(&piv) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Two commuting square matrices: multiplication by `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPair {
    pub mx: QMatrix,
    pub my: QMatrix,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    dim: usize,
    mx: QMatrix,
    my: QMatrix,
}

impl Serialize for MatrixPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairJson {
            dim: self.dim(),
            mx: self.mx.clone(),
            my: self.my.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatrixPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PairJson::deserialize(d)?;
        let ok = [&j.mx, &j.my].iter().all(|m| m.rows() == j.dim && m.cols() == j.dim);
        if !ok {
            return Err(serde::de::Error::custom("matrix shape does not match dim"));
        }
        MatrixPair::new(j.mx, j.my).map_err(serde::de::Error::custom)
    }
}

impl MatrixPair {
    /// Fails unless both are square of equal size and commute.
    pub fn new(mx: QMatrix, my: QMatrix) -> Result<Self> {
        if !mx.is_square() || mx.rows() != my.rows() || !my.is_square() {
            return Err(Error::Dimension("pair needs two square matrices of equal size".into()));
        }
        if &mx * &my != &my * &mx {
            return Err(Error::NotCommuting);
        }
        Ok(MatrixPair { mx, my })
    }

    pub fn dim(&self) -> usize {
        self.mx.rows()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.mx.is_nilpotent() && self.my.is_nilpotent()
    }

    /// Simultaneous conjugation `P^{-1} M P`.
    pub fn conjugate(&self, p: &QMatrix) -> Result<MatrixPair> {
        let pi = p
            .inverse()
            .ok_or_else(|| Error::Dimension("conjugating matrix is singular".into()))?;
        MatrixPair::new(&(&pi * &self.mx) * p, &(&pi * &self.my) * p)
    }
}

/// `(M_x^t, M_y^t)`, the pair of the dual module.
pub fn dual(pair: &MatrixPair) -> MatrixPair {
    MatrixPair {
        mx: pair.mx.transpose(),
        my: pair.my.transpose(),
    }
}

/// `(-M_x, -M_y)`, the pair of the reflected subscheme.
pub fn negate(pair: &MatrixPair) -> MatrixPair {
    MatrixPair {
        mx: -&pair.mx,
        my: -&pair.my,
    }
}

/// Polynomial in `x, y` with rational coefficients, keyed by `(deg_x, deg_y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    pub terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly2 {
    fn constant(c: BigRational) -> Self {
        let mut p = Poly2::default();
        p.add(0, 0, c);
        p
    }

    fn var(i: usize) -> Self {
        let mut p = Poly2::default();
        p.add(
            if i == 0 { 1 } else { 0 },
            if i == 1 { 1 } else { 0 },
            BigRational::one(),
        );
        p
    }

    fn add(&mut self, a: u32, b: u32, c: BigRational) {
        let e = self.terms.entry((a, b)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    fn plus(mut self, other: &Poly2, sign: i64) -> Self {
        for (&(a, b), c) in &other.terms {
            self.add(a, b, c * q(sign));
        }
        self
    }

    fn times(&self, other: &Poly2) -> Self {
        let mut out = Poly2::default();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &other.terms {
                out.add(a + d, b + e, c * f);
            }
        }
        out
    }

    fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }
}

/// Parses a polynomial such as `y^2 - x*y`, `x^2-xy` or `3/2 x^3 + (x+y)^2`.
pub fn parse_poly(s: &str) -> Result<Poly2> {
    let tokens = tokenize(s)?;
    let mut pos = 0;
    let p = parse_expr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("unexpected `{}` in `{s}`", tokens[pos])));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Op(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Var(0) => write!(f, "x"),
            Tok::Var(_) => write!(f, "y"),
            Tok::Op(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            'x' | 'X' => out.push(Tok::Var(0)),
            'y' | 'Y' => out.push(Tok::Var(1)),
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => out.push(Tok::Op(c)),
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`"))),
        }
        i += 1;
    }
    Ok(out)
}

fn parse_expr(t: &[Tok], pos: &mut usize) -> Result<Poly2> {
    let mut acc = parse_term(t, pos)?;
    while let Some(Tok::Op(c @ ('+' | '-'))) = t.get(*pos) {
        *pos += 1;
        let rhs = parse_term(t, pos)?;
        acc = acc.plus(&rhs, if *c == '+' { 1 } else { -1 });
    }
    Ok(acc)
}

fn parse_term(t: &[Tok], pos: &mut usize) -> Result<Poly2> {
    let mut acc = parse_unary(t, pos)?;
    loop {
        match t.get(*pos) {
            Some(Tok::Op('*')) => {
                *pos += 1;
                acc = acc.times(&parse_unary(t, pos)?);
            }
            Some(Tok::Op('/')) => {
                *pos += 1;
                let d = parse_unary(t, pos)?
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division by a non-constant or zero".into()))?;
                acc = acc.times(&Poly2::constant(d.recip()));
            }
            Some(Tok::Num(_) | Tok::Var(_) | Tok::Op('(')) => {
                acc = acc.times(&parse_unary(t, pos)?);
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_unary(t: &[Tok], pos: &mut usize) -> Result<Poly2> {
    if let Some(Tok::Op('-')) = t.get(*pos) {
        *pos += 1;
        return Ok(Poly2::default().plus(&parse_unary(t, pos)?, -1));
    }
    let base = parse_atom(t, pos)?;
    if let Some(Tok::Op('^')) = t.get(*pos) {
        *pos += 1;
        let Some(Tok::Num(e)) = t.get(*pos) else {
            return Err(Error::Parse("exponent must be a nonnegative integer".into()));
        };
        *pos += 1;
        let e: u32 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
        return Ok((0..e).fold(Poly2::constant(BigRational::one()), |acc, _| acc.times(&base)));
    }
    Ok(base)
}

fn parse_atom(t: &[Tok], pos: &mut usize) -> Result<Poly2> {
    let tok = t
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of polynomial".into()))?;
    *pos += 1;
    match tok {
        Tok::Num(n) => Ok(Poly2::constant(BigRational::from_integer(n.clone()))),
        Tok::Var(i) => Ok(Poly2::var(*i)),
        Tok::Op('(') => {
            let e = parse_expr(t, pos)?;
            match t.get(*pos) {
                Some(Tok::Op(')')) => {
                    *pos += 1;
                    Ok(e)
                }
                _ => Err(Error::Parse("missing `)`".into())),
            }
        }
        other => Err(Error::Parse(format!("unexpected `{other}`"))),
    }
}

/// Expands a generator list; `(x,y)^k` stands for all monomials of degree `k`.
pub fn parse_generators(gens: &[String]) -> Result<Vec<Poly2>> {
    let mut out = Vec::new();
    for g in gens {
        let s: String = g.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = s.strip_prefix("(x,y)") {
            let k: u32 = match rest.strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| Error::Parse(format!("bad power in `{g}`")))?,
                None if rest.is_empty() => 1,
                None => return Err(Error::Parse(format!("cannot parse `{g}`"))),
            };
            for a in 0..=k {
                let mut p = Poly2::default();
                p.add(k - a, a, BigRational::one());
                out.push(p);
            }
        } else {
            out.push(parse_poly(&s)?);
        }
    }
    Ok(out)
}

/// Monomials of degree `< n`, ordered `1, x, y, x^2, xy, y^2, …`.
fn monomials(n: u32) -> Vec<(u32, u32)> {
    (0..n).flat_map(|d| (0..=d).map(move |b| (d - b, b))).collect()
}

/// `C[x,y]/(I + (x,y)^n)`: the reduced ideal rows, their pivots, and the
/// monomial list indexed in elimination order (highest degree first).
struct Truncation {
    order: Vec<(u32, u32)>,
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Truncation {
    fn new(gens: &[Poly2], n: u32) -> Self {
        let mut order = monomials(n);
        order.reverse();
        let idx: BTreeMap<(u32, u32), usize> = order.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            for &(a, b) in &order {
                let mut v = vec![BigRational::zero(); order.len()];
                let mut any = false;
                for (&(p, q), c) in &g.terms {
                    if let Some(&i) = idx.get(&(p + a, q + b)) {
                        v[i] += c;
                        any = true;
                    }
                }
                if any {
                    rows.push(v);
                }
            }
        }
        let ncols = order.len();
        let (rows, pivots) = rref(rows, ncols);
        Truncation { order, rows, pivots }
    }

    fn colength(&self) -> usize {
        self.order.len() - self.pivots.len()
    }

    /// Standard monomials, in ascending order `1, x, y, …`.
    fn standard(&self) -> Vec<(u32, u32)> {
        let mut s: Vec<(u32, u32)> = (0..self.order.len())
            .filter(|i| !self.pivots.contains(i))
            .map(|i| self.order[i])
            .collect();
        s.reverse();
        s
    }

    /// Normal form of a monomial in the standard basis.
    fn reduce(&self, m: (u32, u32), basis: &[(u32, u32)]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); basis.len()];
        let Some(i) = self.order.iter().position(|&o| o == m) else {
            return out;
        };
        let mut v = vec![BigRational::zero(); self.order.len()];
        v[i] = BigRational::one();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        for (k, b) in basis.iter().enumerate() {
            let j = self.order.iter().position(|o| o == b).expect("standard monomial");
            out[k] = v[j].clone();
        }
        out
    }
}

/// Multiplication by `x` and `y` on `C[x,y]/I` near the origin, using the
/// truncation `(x,y)^n`. Column `j` holds the image of the `j`-th standard
/// monomial. Fails unless the colength is the same at `n` and `n + 1`.
pub fn pair_from_ideal(gens: &[Poly2], n: u32) -> Result<(MatrixPair, Vec<String>)> {
    if n == 0 {
        return Err(Error::Parse("truncation degree must be positive".into()));
    }
    let t = Truncation::new(gens, n);
    let next = Truncation::new(gens, n + 1);
    if t.colength() != next.colength() {
        return Err(Error::ColengthNotStabilized {
            truncation: n as usize,
            dim: t.colength(),
            next_dim: next.colength(),
        });
    }
    let basis = t.standard();
    let d = basis.len();
    let mut mx = QMatrix::zeros(d, d);
    let mut my = QMatrix::zeros(d, d);
    for (j, &(a, b)) in basis.iter().enumerate() {
        for (m, target) in [((a + 1, b), &mut mx), ((a, b + 1), &mut my)] {
            for (i, v) in t.reduce(m, &basis).into_iter().enumerate() {
                target[(i, j)] = v;
            }
        }
    }
    let names = basis.iter().map(|&(a, b)| monomial_name(a, b)).collect();
    Ok((MatrixPair::new(mx, my)?, names))
}

fn monomial_name(a: u32, b: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = format!("{}{}", part("x", a), part("y", b));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Whether the module is generated by one vector. For a nilpotent commuting
/// pair this holds iff `im M_x + im M_y` has codimension one.
pub fn is_cyclic(pair: &MatrixPair) -> Result<bool> {
    if !pair.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let d = pair.dim();
    Ok(d - pair.mx.hstack(&pair.my).rank() == 1)
}

/// Multivariate polynomial with exponent vectors as keys.
type MPoly = BTreeMap<Vec<u16>, BigRational>;

fn mpoly_add(acc: &mut MPoly, p: &MPoly, scale: &BigRational) {
    for (k, v) in p {
        let e = acc.entry(k.clone()).or_insert_with(BigRational::zero);
        *e += v * scale;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

fn mpoly_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k: Vec<u16> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            let e = out.entry(k.clone()).or_insert_with(BigRational::zero);
            *e += va * vb;
            if e.is_zero() {
                out.remove(&k);
            }
        }
    }
    out
}

/// `det(Σ t_i B_i)` as a polynomial in the `t_i`, by dynamic programming over
/// row subsets (expansion column by column).
fn symbolic_det(basis: &[QMatrix]) -> MPoly {
    let n = basis[0].rows();
    let s = basis.len();
    let entry = |i: usize, j: usize| -> MPoly {
        let mut p = MPoly::new();
        for (t, b) in basis.iter().enumerate() {
            if !b[(i, j)].is_zero() {
                let mut k = vec![0u16; s];
                k[t] = 1;
                p.insert(k, b[(i, j)].clone());
            }
        }
        p
    };
    let mut minors: BTreeMap<u32, MPoly> = BTreeMap::new();
    minors.insert(0, MPoly::from([(vec![0u16; s], BigRational::one())]));
    for col in 0..n {
        let mut next: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (&set, minor) in &minors {
            for i in 0..n {
                if set >> i & 1 == 1 {
                    continue;
                }
                let e = entry(i, col);
                if e.is_empty() {
                    continue;
                }
                let new_set = set | 1 << i;
                // i's position in the sorted row set, against the last column
                let pos = (new_set & ((1u32 << i) - 1)).count_ones() as usize;
                let sign = if (pos + col).is_multiple_of(2) { q(1) } else { q(-1) };
                let term = mpoly_mul(minor, &e);
                mpoly_add(next.entry(new_set).or_default(), &term, &sign);
            }
        }
        next.retain(|_, p| !p.is_empty());
        minors = next;
    }
    minors.remove(&((1u32 << n) - 1)).unwrap_or_default()
}

/// How an invertible element of a matrix subspace was found or excluded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvertibilityCertificate {
    /// An explicit invertible combination.
    Witness { coefficients: Vec<String>, sample: usize },
    /// The generic determinant vanishes identically.
    DeterminantVanishes { params: usize },
    /// Odd-size skew matrices are singular.
    OddDimension,
    /// The subspace is zero.
    EmptySpace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invertibility {
    Exists(QMatrix, InvertibilityCertificate),
    None(InvertibilityCertificate),
}

fn combine(basis: &[QMatrix], coeffs: &[BigRational]) -> QMatrix {
    let n = basis[0].rows();
    basis
        .iter()
        .zip(coeffs)
        .fold(QMatrix::zeros(n, n), |acc, (b, c)| &acc + &b.scale(c))
}

/// Decides whether the span of `basis` contains an invertible matrix: seeded
/// random samples first, then the exact generic determinant.
pub fn find_invertible(basis: &[QMatrix], seed: u64, samples: usize) -> Result<Invertibility> {
    if basis.is_empty() {
        return Ok(Invertibility::None(InvertibilityCertificate::EmptySpace));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let try_coeffs = |coeffs: Vec<BigRational>, sample: usize| {
        let m = combine(basis, &coeffs);
        (!m.det().is_zero()).then(|| {
            let cert = InvertibilityCertificate::Witness {
                coefficients: coeffs.iter().map(ToString::to_string).collect(),
                sample,
            };
            Invertibility::Exists(m, cert)
        })
    };
    for k in 0..samples {
        let coeffs = (0..basis.len()).map(|_| q(rng.gen_range(-100..=100))).collect();
        if let Some(found) = try_coeffs(coeffs, k) {
            return Ok(found);
        }
    }
    let n = basis[0].rows();
    if n > SYMBOLIC_MAX_DIM || basis.len() > SYMBOLIC_MAX_PARAMS {
        return Err(Error::Undecided(format!(
            "no invertible sample in {samples} tries and the symbolic determinant is capped at \
             dim {SYMBOLIC_MAX_DIM} with {SYMBOLIC_MAX_PARAMS} parameters (got dim {n}, {} parameters)",
            basis.len()
        )));
    }
    let det = symbolic_det(basis);
    if det.is_empty() {
        return Ok(Invertibility::None(InvertibilityCertificate::DeterminantVanishes {
            params: basis.len(),
        }));
    }
    // A nonzero polynomial of degree n has a non-root in {0..n}^s.
    let s = basis.len();
    let mut point = vec![0i64; s];
    for k in 0.. {
        let coeffs: Vec<BigRational> = point.iter().map(|&v| q(v)).collect();
        if let Some(found) = try_coeffs(coeffs, samples + k) {
            return Ok(found);
        }
        let mut i = 0;
        loop {
            if i == s {
                return Err(Error::Undecided(
                    "nonzero determinant without a non-root on the grid".into(),
                ));
            }
            point[i] += 1;
            if point[i] <= n as i64 {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
    unreachable!()
}

#[derive(Clone, Debug, Serialize)]
pub struct IsomorphismReport {
    pub isomorphic: bool,
    pub intertwiner_space_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<QMatrix>,
    pub certificate: InvertibilityCertificate,
}

/// Solution space of `P A_b = B_b P` (`b = x, y`) as matrices.
pub fn intertwiners(a: &MatrixPair, b: &MatrixPair) -> Vec<QMatrix> {
    let n = a.dim();
    // unknown P_{ij} at index i*n + j
    let mut rows = Vec::new();
    for (ma, mb) in [(&a.mx, &b.mx), (&a.my, &b.my)] {
        for i in 0..n {
            for j in 0..n {
                // (P A)_{ij} - (B P)_{ij}
                let mut row = vec![BigRational::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] += &ma[(k, j)];
                    row[k * n + j] -= &mb[(i, k)];
                }
                rows.push(row);
            }
        }
    }
    nullspace(rows, n * n)
        .into_iter()
        .map(|v| QMatrix {
            rows: n,
            cols: n,
            data: v,
        })
        .collect()
}

/// Whether the two modules are isomorphic, i.e. the pairs are simultaneously
/// conjugate: `P a P^{-1} = b` for an invertible `P`.
pub fn module_isomorphic(a: &MatrixPair, b: &MatrixPair, seed: u64) -> Result<IsomorphismReport> {
    if a.dim() != b.dim() {
        return Ok(IsomorphismReport {
            isomorphic: false,
            intertwiner_space_dim: 0,
            witness: None,
            certificate: InvertibilityCertificate::EmptySpace,
        });
    }
    let basis = intertwiners(a, b);
    let dim = basis.len();
    Ok(match find_invertible(&basis, seed, 16)? {
        Invertibility::Exists(p, cert) => IsomorphismReport {
            isomorphic: true,
            intertwiner_space_dim: dim,
            witness: Some(p),
            certificate: cert,
        },
        Invertibility::None(cert) => IsomorphismReport {
            isomorphic: false,
            intertwiner_space_dim: dim,
            witness: None,
            certificate: cert,
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SkewSolutionSpace {
    pub basis: Vec<QMatrix>,
    pub contains_invertible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<QMatrix>,
    /// `S` with `S^t Φ S = J` for the witness `Φ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_basis: Option<QMatrix>,
    pub certificate: InvertibilityCertificate,
}

/// Skew `Φ` with `Φ M_b + M_b^t Φ = 0` for `b = x, y`, and whether one is invertible.
pub fn symplectic_exists(pair: &MatrixPair, seed: u64) -> Result<SkewSolutionSpace> {
    let n = pair.dim();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let skew = |v: &[BigRational]| {
        let mut phi = QMatrix::zeros(n, n);
        for (&(i, j), c) in slots.iter().zip(v) {
            phi[(i, j)] = c.clone();
            phi[(j, i)] = -c.clone();
        }
        phi
    };
    let mut rows = Vec::new();
    for m in [&pair.mx, &pair.my] {
        let mt = m.transpose();
        // each condition entry is linear in the slot values
        let images: Vec<QMatrix> = (0..slots.len())
            .map(|s| {
                let mut e = vec![BigRational::zero(); slots.len()];
                e[s] = BigRational::one();
                let phi = skew(&e);
                &(&phi * m) + &(&mt * &phi)
            })
            .collect();
        for i in 0..n {
            for j in 0..n {
                rows.push(images.iter().map(|im| im[(i, j)].clone()).collect());
            }
        }
    }
    let basis: Vec<QMatrix> = if slots.is_empty() {
        Vec::new()
    } else {
        nullspace(rows, slots.len()).iter().map(|v| skew(v)).collect()
    };
    let decision = if n % 2 == 1 {
        Invertibility::None(InvertibilityCertificate::OddDimension)
    } else {
        find_invertible(&basis, seed, 16)?
    };
    Ok(match decision {
        Invertibility::Exists(phi, cert) => {
            let s = symplectic_basis(&phi);
            SkewSolutionSpace {
                basis,
                contains_invertible: true,
                witness: Some(phi),
                standard_basis: s,
                certificate: cert,
            }
        }
        Invertibility::None(cert) => SkewSolutionSpace {
            basis,
            contains_invertible: false,
            witness: None,
            standard_basis: None,
            certificate: cert,
        },
    })
}

/// The standard form `J = [[0, I], [-I, 0]]`.
pub fn standard_j(k: usize) -> QMatrix {
    let mut j = QMatrix::zeros(2 * k, 2 * k);
    for i in 0..k {
        j[(i, k + i)] = q(1);
        j[(k + i, i)] = q(-1);
    }
    j
}

/// `S` with `S^t Φ S = J` by symplectic Gram–Schmidt; `None` if `Φ` is
/// degenerate or not skew.
pub fn symplectic_basis(phi: &QMatrix) -> Option<QMatrix> {
    let n = phi.rows();
    if n % 2 == 1 || !phi.is_skew() {
        return None;
    }
    let form = |u: &[BigRational], v: &[BigRational]| -> BigRational {
        let mut s = BigRational::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                s += &u[i] * &phi[(i, j)] * &v[j];
            }
        }
        s
    };
    let mut pool: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut v = vec![BigRational::zero(); n];
            v[i] = BigRational::one();
            v
        })
        .collect();
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while !pool.is_empty() {
        let e = pool.remove(0);
        let Some(k) = pool.iter().position(|f| !form(&e, f).is_zero()) else {
            if e.iter().all(Zero::is_zero) {
                continue;
            }
            return None;
        };
        let f0 = pool.remove(k);
        let c = form(&e, &f0);
        let f: Vec<BigRational> = f0.iter().map(|x| x / &c).collect();
        // project the rest onto the complement of span(e, f)
        pool = pool
            .into_iter()
            .map(|v| {
                let a = form(&v, &f);
                let b = form(&e, &v);
                v.iter()
                    .zip(&e)
                    .zip(&f)
                    .map(|((vi, ei), fi)| vi - &a * ei - &b * fi)
                    .collect::<Vec<_>>()
            })
            .filter(|v: &Vec<BigRational>| v.iter().any(|x| !x.is_zero()))
            .collect();
        es.push(e);
        fs.push(f);
    }
    if es.len() * 2 != n {
        return None;
    }
    let mut s = QMatrix::zeros(n, n);
    for (c, v) in es.iter().chain(&fs).enumerate() {
        for i in 0..n {
            s[(i, c)] = v[i].clone();
        }
    }
    Some(s)
}

/// `M_x = E_21`, `M_y = E_31`: cyclic, with a non-cyclic transpose.
pub fn footnote_pair() -> MatrixPair {
    MatrixPair::new(QMatrix::unit(3, 2, 1), QMatrix::unit(3, 3, 1)).expect("commuting")
}

/// The 4×4 pair of `(x,y)^3 + (y^2 - xy, x^2 - xy)` as printed:
/// `M_x = E_12 + E_23`, `M_y = E_12 + E_23 + E_43`.
pub fn remark_pair() -> MatrixPair {
    let mx = &QMatrix::unit(4, 1, 2) + &QMatrix::unit(4, 2, 3);
    let my = &mx + &QMatrix::unit(4, 4, 3);
    MatrixPair::new(mx, my).expect("commuting")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn gens(s: &[&str]) -> Vec<Poly2> {
        parse_generators(&s.iter().map(|x| x.to_string()).collect::<Vec<_>>()).unwrap()
    }

    /// Searches all vectors with entries in {-1, 0, 1} for a cyclic one.
    fn brute_cyclic(pair: &MatrixPair) -> bool {
        let n = pair.dim();
        let words: Vec<QMatrix> = (0..n)
            .flat_map(|i| (0..n - i).map(move |j| (i, j)))
            .map(|(i, j)| &pair.mx.pow(i as u32) * &pair.my.pow(j as u32))
            .collect();
        let total = 3usize.pow(n as u32);
        (0..total).any(|mut code| {
            let mut v = QMatrix::zeros(n, 1);
            for i in 0..n {
                v[(i, 0)] = q((code % 3) as i64 - 1);
                code /= 3;
            }
            let cols = words.iter().fold(QMatrix::zeros(n, 0), |acc, w| acc.hstack(&(w * &v)));
            cols.rank() == n
        })
    }

    /// One-sided oracle: integer combinations with coefficients in -2..=2.
    fn brute_invertible(basis: &[QMatrix]) -> bool {
        let s = basis.len();
        let total = 5usize.pow(s as u32);
        (0..total).any(|mut code| {
            let coeffs: Vec<BigRational> = (0..s)
                .map(|_| {
                    let c = q((code % 5) as i64 - 2);
                    code /= 5;
                    c
                })
                .collect();
            !combine(basis, &coeffs).det().is_zero()
        })
    }

    #[test]
    fn parser() {
        let p = parse_poly("y^2 - x*y").unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.terms[&(0, 2)], q(1));
        assert_eq!(p, parse_poly("y*y - y x").unwrap());
        let p = parse_poly("3/2x^2 - (x+y)^2").unwrap();
        assert_eq!(p.terms[&(2, 0)], BigRational::new(1.into(), 2.into()));
        assert_eq!(p.terms[&(1, 1)], q(-2));
        assert!(parse_poly("x + z").is_err());
        assert!(parse_poly("x / y").is_err());
        assert_eq!(gens(&["(x,y)^2"]).len(), 3);
        assert_eq!(gens(&["(x, y)"]).len(), 2);
    }

    #[test]
    fn ideal_examples() {
        let (p, b) = pair_from_ideal(&gens(&["x", "y"]), 1).unwrap();
        assert_eq!(p.dim(), 1);
        assert!(p.mx.is_zero() && p.my.is_zero());
        assert_eq!(b, vec!["1"]);

        let (p, b) = pair_from_ideal(&gens(&["x^2", "y"]), 2).unwrap();
        assert_eq!(b, vec!["1", "x"]);
        assert_eq!(p.mx, QMatrix::from_i64(&[&[0, 0], &[1, 0]]));
        assert!(p.my.is_zero());

        let (p, _) = pair_from_ideal(&gens(&["(x,y)^2"]), 2).unwrap();
        assert_eq!(p, footnote_pair());

        let (p, _) = pair_from_ideal(&gens(&["(x,y)^3", "y^2-xy", "x^2-xy"]), 3).unwrap();
        assert_eq!(p.dim(), 4);
        assert!(module_isomorphic(&p, &remark_pair(), 1).unwrap().isomorphic);

        let err = pair_from_ideal(&gens(&["x^3", "y"]), 2).unwrap_err();
        assert!(matches!(
            err,
            Error::ColengthNotStabilized {
                truncation: 2,
                dim: 2,
                next_dim: 3
            }
        ));
    }

    #[test]
    fn monomial_ideal_colengths() {
        // (x^a, y^b) has colength a*b; (x,y)^k has k(k+1)/2
        for a in 1..=3u32 {
            for b in 1..=3u32 {
                let g = gens(&[&format!("x^{a}"), &format!("y^{b}")]);
                let (p, _) = pair_from_ideal(&g, a + b).unwrap();
                assert_eq!(p.dim() as u32, a * b);
                assert!(p.is_nilpotent());
            }
        }
        for k in 1..=4u32 {
            let (p, _) = pair_from_ideal(&gens(&[&format!("(x,y)^{k}")]), k).unwrap();
            assert_eq!(p.dim() as u32, k * (k + 1) / 2);
        }
    }

    #[test]
    fn cyclicity() {
        let f = footnote_pair();
        assert!(is_cyclic(&f).unwrap());
        assert!(!is_cyclic(&dual(&f)).unwrap());
        let zero = MatrixPair::new(QMatrix::zeros(1, 1), QMatrix::zeros(1, 1)).unwrap();
        assert!(is_cyclic(&zero).unwrap());
        let id = MatrixPair::new(QMatrix::identity(2), QMatrix::zeros(2, 2)).unwrap();
        assert!(matches!(is_cyclic(&id), Err(Error::NotNilpotent)));
    }

    #[test]
    fn cyclicity_matches_brute_force() {
        let mut pairs = vec![
            footnote_pair(),
            dual(&footnote_pair()),
            remark_pair(),
            dual(&remark_pair()),
        ];
        for g in [
            vec!["x^2", "y^2"],
            vec!["x^2", "y"],
            vec!["(x,y)^2"],
            vec!["x^3", "y"],
            vec!["x^2", "xy", "y^3"],
            vec!["x*y", "x^3", "y^2"],
        ] {
            let (p, _) = pair_from_ideal(&gens(&g), 4).unwrap();
            pairs.push(dual(&p));
            pairs.push(p);
        }
        for p in pairs.iter().filter(|p| p.dim() <= 4) {
            assert_eq!(is_cyclic(p).unwrap(), brute_cyclic(p), "{p:?}");
        }
    }

    #[test]
    fn involutions() {
        let p = remark_pair();
        assert_eq!(dual(&dual(&p)), p);
        assert_eq!(negate(&negate(&p)), p);
        let d = dual(&p);
        assert_eq!(&d.mx * &d.my, &d.my * &d.mx);
    }

    #[test]
    fn isomorphism_examples() {
        let p = remark_pair();
        let r = module_isomorphic(&p, &p, 3).unwrap();
        assert!(r.isomorphic);
        let c = QMatrix::from_i64(&[&[1, 2, 0, 0], &[0, 1, 3, 0], &[1, 0, 1, 0], &[0, 0, 5, 1]]);
        let conj = p.conjugate(&c).unwrap();
        let r = module_isomorphic(&p, &conj, 3).unwrap();
        assert!(r.isomorphic);
        let w = r.witness.unwrap();
        assert_eq!(&w * &p.mx, &conj.mx * &w);

        let (a, _) = pair_from_ideal(&gens(&["x^2", "y"]), 2).unwrap();
        let (b, _) = pair_from_ideal(&gens(&["x", "y^2"]), 2).unwrap();
        let r = module_isomorphic(&a, &b, 3).unwrap();
        assert!(!r.isomorphic);
        assert!(!brute_invertible(&intertwiners(&a, &b)));
    }

    #[test]
    fn remark_pair_has_no_symplectic_form() {
        let p = remark_pair();
        assert_eq!(&p.mx * &p.my, &p.my * &p.mx);
        let s = symplectic_exists(&p, 7).unwrap();
        assert!(!s.contains_invertible);
        assert!(matches!(
            s.certificate,
            InvertibilityCertificate::DeterminantVanishes { .. }
        ));
        assert!(!brute_invertible(&s.basis));
        for b in &s.basis {
            assert!(b.is_skew());
            assert!((&(b * &p.mx) + &(&p.mx.transpose() * b)).is_zero());
        }
    }

    // Gorenstein quotients: a compatible form needs the socle odd under (x,y) -> (-x,-y)
    #[test]
    fn socle_parity() {
        for (g, n, expect) in [
            (&["x^2", "y^2"][..], 4, false),
            (&["x", "y^2"][..], 3, true),
            (&["x^2", "y^3"][..], 5, true),
            (&["x", "y^4"][..], 5, true),
            (&["xy", "x^2-y^2"][..], 4, false),
        ] {
            let (p, _) = pair_from_ideal(&gens(g), n).unwrap();
            let s = symplectic_exists(&p, 5).unwrap();
            assert_eq!(s.contains_invertible, expect, "{g:?}");
            assert_eq!(brute_invertible(&s.basis), expect, "{g:?}");
        }
    }

    #[test]
    fn zero_pair_is_symplectic() {
        let z = MatrixPair::new(QMatrix::zeros(2, 2), QMatrix::zeros(2, 2)).unwrap();
        let s = symplectic_exists(&z, 1).unwrap();
        assert!(s.contains_invertible);
        let odd = MatrixPair::new(QMatrix::zeros(3, 3), QMatrix::zeros(3, 3)).unwrap();
        assert!(!symplectic_exists(&odd, 1).unwrap().contains_invertible);
    }

    /// `g = J S` with `S` symmetric lies in `sp`; `g^3 + c g` commutes with it.
    fn sp_pair(k: usize, seed: u64) -> MatrixPair {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 * k;
        let mut s = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = q(rng.gen_range(-2..=2));
                s[(i, j)] = v.clone();
                s[(j, i)] = v;
            }
        }
        let g1 = &standard_j(k) * &s;
        let g2 = &g1.pow(3) + &g1.scale(&q(rng.gen_range(-3..=3)));
        MatrixPair::new(g1, g2).unwrap()
    }

    #[test]
    fn sp_pairs_admit_j() {
        for seed in 0..4 {
            let p = sp_pair(2, seed);
            let j = standard_j(2);
            assert!((&(&j * &p.mx) + &(&p.mx.transpose() * &j)).is_zero());
            let s = symplectic_exists(&p, seed).unwrap();
            assert!(s.contains_invertible);
            let phi = s.witness.unwrap();
            let basis = s.standard_basis.unwrap();
            assert_eq!(&(&basis.transpose() * &phi) * &basis, j);
            // Z = -Z: the negated pair is the dual pair
            assert!(module_isomorphic(&negate(&p), &dual(&p), seed).unwrap().isomorphic);
        }
    }

    #[test]
    fn symplectic_implies_negate_iso_dual_on_examples() {
        let mut pairs = vec![footnote_pair(), remark_pair()];
        for g in [vec!["x^2", "y^2"], vec!["x^2", "y"], vec!["x^4", "y"], vec!["(x,y)^2"]] {
            pairs.push(pair_from_ideal(&gens(&g), 4).unwrap().0);
        }
        for p in &pairs {
            if symplectic_exists(p, 0).unwrap().contains_invertible {
                assert!(module_isomorphic(&negate(p), &dual(p), 0).unwrap().isomorphic);
            }
        }
    }

    #[test]
    fn symbolic_determinant_small() {
        // det(t0 I + t1 J) on 2x2 = t0^2 + t1^2
        let d = symbolic_det(&[QMatrix::identity(2), standard_j(1)]);
        assert_eq!(d.len(), 2);
        assert_eq!(d[&vec![2, 0]], q(1));
        assert_eq!(d[&vec![0, 2]], q(1));
    }

    #[test]
    fn json_roundtrip() {
        let p = remark_pair();
        let j = serde_json::to_string(&p).unwrap();
        assert!(j.starts_with(r#"{"dim":4,"mx":[["0","1","0","0"]"#));
        let back: MatrixPair = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"dim":2,"mx":[["0","1"],["0","0"]],"my":[["0","0"],["1","0"]]}"#;
        assert!(serde_json::from_str::<MatrixPair>(bad).is_err());
    }

    fn nilpotent_pair() -> impl Strategy<Value = MatrixPair> {
        // strictly upper triangular commuting pairs: polynomials in one nilpotent
        (proptest::collection::vec(-2i64..=2, 6), -2i64..=2, -2i64..=2).prop_map(|(u, a, b)| {
            let mut n = QMatrix::zeros(4, 4);
            let mut k = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    n[(i, j)] = q(u[k]);
                    k += 1;
                }
            }
            let mx = &n.scale(&q(a)) + &n.pow(2);
            let my = &n.scale(&q(b)) + &n.pow(3);
            MatrixPair::new(mx, my).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn cyclic_oracle_agrees(p in nilpotent_pair()) {
            prop_assert_eq!(is_cyclic(&p).unwrap(), brute_cyclic(&p));
        }

        #[test]
        fn invertibility_agrees_with_brute_force(p in nilpotent_pair()) {
            let s = symplectic_exists(&p, 11).unwrap();
            if brute_invertible(&s.basis) {
                prop_assert!(s.contains_invertible);
            }
            if !s.contains_invertible {
                prop_assert!(!brute_invertible(&s.basis));
            }
        }
    }
}
