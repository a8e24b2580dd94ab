//! Truncated sparse formal power series in the variables `x_i = e^{-α_i}`.
//!
//! A [`Series`] stores only non-zero coefficients, and only on exponents of
//! total degree at most its cap `D`. Every operation is closed over that
//! truncation, so two series computed along different routes compare equal
//! exactly when they agree through degree `D`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of `Q⁺`: non-negative simple-root coordinates.
///
/// Ordered by total degree, then lexicographically on coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    degree: u32,
    coords: Vec<u32>,
}

impl Exponent {
    pub fn new(coords: Vec<u32>) -> Self {
        let degree = coords.iter().sum();
        Exponent { degree, coords }
    }

    pub fn zero(n: usize) -> Self {
        Exponent { degree: 0, coords: vec![0; n] }
    }

    /// `scale · α_i` in `n` variables.
    pub fn unit(n: usize, i: usize, scale: u32) -> Self {
        let mut coords = vec![0; n];
        coords[i] = scale;
        Exponent { degree: scale, coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    /// Indices with a non-zero coordinate.
    pub fn support(&self) -> Vec<usize> {
        self.coords.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.coords.iter().enumerate().filter(|(_, &c)| c > 0).fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.arity(), other.arity());
        Exponent {
            degree: self.degree + other.degree,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self - other` when the difference stays in `Q⁺`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()?;
        Some(Exponent::new(coords))
    }

    /// Componentwise `self ≤ other`, i.e. `other - self ∈ Q⁺`.
    pub fn le_componentwise(&self, other: &Exponent) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// `Some(k)` if `self = k · base` for an integer `k ≥ 1`.
    pub fn multiple_of(&self, base: &Exponent) -> Option<u32> {
        if base.is_zero() || !self.degree.is_multiple_of(base.degree) {
            return None;
        }
        let k = self.degree / base.degree;
        self.coords.iter().zip(&base.coords).all(|(a, b)| *a == k * b).then_some(k)
    }

    /// Sum coordinates within classes: `α_i ↦ γ_{class_of[i]}`.
    pub fn fold(&self, class_of: &[usize], classes: usize) -> Exponent {
        let mut coords = vec![0; classes];
        for (i, &c) in self.coords.iter().enumerate() {
            coords[class_of[i]] += c;
        }
        Exponent { degree: self.degree, coords }
    }

    /// `x1^a1*x2^a2…`, listing only non-zero coordinates; `1` for the zero exponent.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, c)| format!("{var}{}^{c}", i + 1))
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A formal power series truncated at total degree `cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T> {
    nvars: usize,
    cap: u32,
    terms: BTreeMap<Exponent, T>,
}

/// Series over the class variables `e^{-γ_[i]}` of a partition.
pub type FoldedSeries<T> = Series<T>;

impl<T: Scalar> Series<T> {
    pub fn zero(nvars: usize, cap: u32) -> Self {
        Series { nvars, cap, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, cap: u32) -> Self {
        Self::monomial(Exponent::zero(nvars), T::one(), nvars, cap)
    }

    pub fn monomial(exp: Exponent, coeff: T, nvars: usize, cap: u32) -> Self {
        let mut s = Self::zero(nvars, cap);
        s.add_term(exp, coeff);
        s
    }

    /// Build from `(exponent, coefficient)` pairs. Repeated exponents add;
    /// terms above the cap are dropped.
    pub fn from_terms(nvars: usize, cap: u32, terms: impl IntoIterator<Item = (Exponent, T)>) -> Result<Self> {
        let mut s = Self::zero(nvars, cap);
        for (e, c) in terms {
            if e.arity() != nvars {
                return Err(Error::ArityMismatch(nvars, e.arity()));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &T)> {
        self.terms.iter()
    }

    pub fn get(&self, exp: &Exponent) -> Option<&T> {
        self.terms.get(exp)
    }

    pub fn coeff(&self, exp: &Exponent) -> T {
        self.terms.get(exp).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant(&self) -> T {
        self.coeff(&Exponent::zero(self.nvars))
    }

    /// Add `coeff · x^exp` in place, dropping it if above the cap.
    pub fn add_term(&mut self, exp: Exponent, coeff: T) {
        debug_assert_eq!(exp.arity(), self.nvars);
        if exp.degree > self.cap || coeff.is_zero() {
            return;
        }
        accumulate(&mut self.terms, exp, coeff);
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch(self.cap, other.cap));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            accumulate(&mut out.terms, e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &T) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars, self.cap);
        }
        Series {
            nvars: self.nvars,
            cap: self.cap,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * k.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            nvars: self.nvars,
            cap: self.cap,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    /// Drop every term of degree above `cap`. A larger `cap` is clamped to the
    /// current one: missing high-degree information cannot be recovered.
    pub fn truncate(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        Series {
            nvars: self.nvars,
            cap,
            terms: self.terms.iter().filter(|(e, _)| e.degree <= cap).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Exponent, T> = HashMap::new();
        mul_into(&mut acc, self.terms.iter(), &other.terms, self.cap);
        Ok(self.with_terms(acc))
    }

    /// Multiplicative inverse through degree `cap`; requires constant term 1.
    pub fn invert(&self) -> Result<Self> {
        if self.constant() != T::one() {
            return Err(Error::ConstantTermNotOne);
        }
        let parts = self.homogeneous_parts();
        // b_0 = 1, b_d = -Σ_{j=1..d} a_j b_{d-j}
        let mut inv: Vec<BTreeMap<Exponent, T>> = Vec::with_capacity(self.cap as usize + 1);
        inv.push(BTreeMap::from([(Exponent::zero(self.nvars), T::one())]));
        for d in 1..=self.cap as usize {
            let mut acc: HashMap<Exponent, T> = HashMap::new();
            for j in 1..=d {
                if parts[j].is_empty() || inv[d - j].is_empty() {
                    continue;
                }
                for (ea, ca) in &parts[j] {
                    for (eb, cb) in &inv[d - j] {
                        let c = ca.clone() * cb.clone();
                        let e = ea.add(eb);
                        match acc.get_mut(&e) {
                            Some(v) => *v = v.clone() - c,
                            None => {
                                acc.insert(e, -c);
                            }
                        }
                    }
                }
            }
            inv.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        Ok(Series { nvars: self.nvars, cap: self.cap, terms: inv.into_iter().flatten().collect() })
    }

    /// `log(self)` for a series with constant term 1.
    ///
    /// Computed from `E(log a) = E(a)/a` with `E` the total-degree operator
    /// `x^α ↦ deg(α) x^α`.
    pub fn log1(&self) -> Result<Self> {
        if self.constant() != T::one() {
            return Err(Error::ConstantTermNotOne);
        }
        let inv = self.invert()?;
        let euler = self.euler();
        let mut acc: HashMap<Exponent, T> = HashMap::new();
        mul_into(&mut acc, euler.terms.iter(), &inv.terms, self.cap);
        let mut out = Self::zero(self.nvars, self.cap);
        for (e, c) in acc {
            if !c.is_zero() {
                let k = e.degree as u64;
                out.terms.insert(e, c * T::recip_int(k));
            }
        }
        Ok(out)
    }

    /// `Σ_{k≥1} (-1)^{k+1} (a-1)^k / k`, the defining series for `log1`.
    /// Slower than [`Series::log1`]; kept as an independent route for checks.
    pub fn log1_by_powers(&self) -> Result<Self> {
        if self.constant() != T::one() {
            return Err(Error::ConstantTermNotOne);
        }
        let shifted = self.sub(&Self::one(self.nvars, self.cap))?;
        let mut out = Self::zero(self.nvars, self.cap);
        let mut power = shifted.clone();
        let mut k = 1u64;
        while !power.is_zero() {
            let sign = if k % 2 == 1 { T::one() } else { -T::one() };
            out = out.add(&power.scale(&(sign * T::recip_int(k))))?;
            power = power.mul(&shifted)?;
            k += 1;
        }
        Ok(out)
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp0(&self) -> Result<Self> {
        if !self.constant().is_zero() {
            return Err(Error::ConstantTermNotZero);
        }
        let mut out = Self::one(self.nvars, self.cap);
        let mut power = Self::one(self.nvars, self.cap);
        let mut k = 1u64;
        loop {
            power = power.mul(self)?.scale(&T::recip_int(k));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
            k += 1;
        }
        Ok(out)
    }

    /// Image under `α_i ↦ γ_{class_of[i]}`; coefficients of colliding exponents add.
    pub fn fold(&self, class_of: &[usize], classes: usize) -> FoldedSeries<T> {
        assert_eq!(class_of.len(), self.nvars, "class map must cover every variable");
        let mut out = Series::zero(classes, self.cap);
        for (e, c) in &self.terms {
            accumulate(&mut out.terms, e.fold(class_of, classes), c.clone());
        }
        out
    }

    /// Canonical text: `c*x1^a1*…` terms joined by `" + "`, `"0"` when empty.
    pub fn render(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| if e.is_zero() { c.to_string() } else { format!("{c}*{}", e.render(var)) })
            .collect();
        parts.join(" + ")
    }

    fn euler(&self) -> Self {
        Series {
            nvars: self.nvars,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| !e.is_zero())
                .map(|(e, c)| (e.clone(), c.clone() * T::from_int(e.degree as i64)))
                .collect(),
        }
    }

    fn homogeneous_parts(&self) -> Vec<Vec<(Exponent, T)>> {
        let mut parts = vec![Vec::new(); self.cap as usize + 1];
        for (e, c) in &self.terms {
            parts[e.degree as usize].push((e.clone(), c.clone()));
        }
        parts
    }

    fn with_terms(&self, acc: HashMap<Exponent, T>) -> Self {
        Series {
            nvars: self.nvars,
            cap: self.cap,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<T: Scalar> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

fn accumulate<T: Scalar>(terms: &mut BTreeMap<Exponent, T>, exp: Exponent, coeff: T) {
    use std::collections::btree_map::Entry;
    match terms.entry(exp) {
        Entry::Vacant(v) => {
            if !coeff.is_zero() {
                v.insert(coeff);
            }
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().clone() + coeff;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

// `rhs` is iterated in degree order so the inner loop can stop at the cap.
fn mul_into<'a, T: Scalar + 'a>(
    acc: &mut HashMap<Exponent, T>,
    lhs: impl Iterator<Item = (&'a Exponent, &'a T)>,
    rhs: &BTreeMap<Exponent, T>,
    cap: u32,
) {
    for (ea, ca) in lhs {
        for (eb, cb) in rhs {
            if ea.degree + eb.degree > cap {
                break;
            }
            let c = ca.clone() * cb.clone();
            let e = ea.add(eb);
            match acc.get_mut(&e) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
    }
}
