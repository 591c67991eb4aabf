use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::scalar::Scalar;

pub type Exps = SmallVec<[u16; 8]>;

/// Exponent vector ordered graded-lexicographically (x0 > x1 > ...).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono {
    deg: u32,
    exps: Exps,
}

impl Mono {
    pub fn new(exps: &[u16]) -> Self {
        Mono { deg: exps.iter().map(|&e| e as u32).sum(), exps: Exps::from_slice(exps) }
    }

    pub fn one(nvars: usize) -> Self {
        Mono { deg: 0, exps: smallvec::smallvec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Mono::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let exps: Exps = self.exps.iter().zip(o.exps.iter()).map(|(a, b)| a + b).collect();
        Mono { deg: self.deg + o.deg, exps }
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        let exps: Exps = o.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Mono { deg: o.deg - self.deg, exps }
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let exps: Exps = self.exps.iter().zip(o.exps.iter()).map(|(a, b)| *a.min(b)).collect();
        Mono::new(&exps)
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Mono {
        let mut exps = self.exps.clone();
        exps[i] = e;
        Mono::new(&exps)
    }

    pub fn extend(&self, nvars: usize) -> Mono {
        let mut exps = self.exps.clone();
        exps.resize(nvars, 0);
        Mono { deg: self.deg, exps }
    }
}

/// Sparse polynomial over ℚ(i) in a fixed number of variables.
///
/// Terms are kept in a map ordered graded-lexicographically, so the
/// leading term is the last entry. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(Mono::var(nvars, i), Scalar::one());
        p
    }

    pub fn monomial(mono: Mono, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(mono.nvars());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Scalar)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length mismatch");
            p.add_term(m, &c);
        }
        p
    }

    /// Linear form `Σ coeffs[i]·x_i`.
    pub fn linear(nvars: usize, coeffs: &[Scalar]) -> Self {
        MultiPoly::from_terms(
            nvars,
            coeffs.iter().enumerate().map(|(i, c)| (Mono::var(nvars, i), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().deg == 0)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg).min()
    }

    /// True iff every term has the same total degree (the zero polynomial counts).
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => it.all(|m| m.deg == first.deg),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[var] as u32).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exps[var] > 0)
    }

    pub fn leading_term(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_mono(&self, m: &Mono, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    /// Divide by the graded-lex leading coefficient; zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.scale(&lc.inv().unwrap())
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e > 0 {
                let nm = m.with_exp(var, e - 1);
                out.add_term(nm, &(c * &Scalar::from_int(e as i64)));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitute polynomials (in a common universe) for every variable.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars, "one image per variable required");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(p.nvars), p.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, &tc);
            }
        }
        out
    }

    /// Substitute a polynomial for one variable, keeping the universe.
    pub fn substitute(&self, var: usize, value: &MultiPoly) -> MultiPoly {
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| if i == var { value.clone() } else { MultiPoly::var(self.nvars, i) })
            .collect();
        self.compose(&images)
    }

    /// Evaluate one variable at a scalar.
    pub fn eval_var(&self, var: usize, value: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[var];
            let nm = m.with_exp(var, 0);
            out.add_term(nm, &(c * &value.pow(e as u32)));
        }
        out
    }

    /// Embed into a larger universe by appending variables.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        MultiPoly { nvars, terms: self.terms.iter().map(|(m, c)| (m.extend(nvars), c.clone())).collect() }
    }

    /// Drop trailing variables, which must not occur.
    pub fn restrict_vars(&self, nvars: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            assert!(m.exps[nvars..].iter().all(|&e| e == 0), "dropped variable occurs");
            out.terms.insert(Mono::new(&m.exps[..nvars]), c.clone());
        }
        out
    }

    /// Coefficients as a polynomial in `var`: entry k multiplies var^k.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let e = m.exps[var] as usize;
            out[e].terms.insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(nvars: usize, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                out.add_term(m.with_exp(var, m.exps[var] + k as u16), a);
            }
        }
        out
    }

    /// Keep only the terms whose exponent of `var` equals `e`, with that exponent cleared.
    pub fn coefficient_of_power(&self, var: usize, e: u16) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exps[var] == e {
                out.terms.insert(m.with_exp(var, 0), c.clone());
            }
        }
        out
    }

    /// Homogeneous component of a given total degree.
    pub fn homogeneous_part(&self, deg: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.deg == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv().unwrap()));
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let lc_inv = lc.inv().unwrap();
        let mut r = self.clone();
        let mut q = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc_inv;
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&qm), &-(dc * &qc));
            }
            q.add_term(qm, &qc);
        }
        Some(q)
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        match it.next() {
            None => Mono::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Scale to coprime integer coefficients with positive leading coefficient.
    /// Falls back to [`MultiPoly::monic`] when a coefficient is not rational.
    pub fn primitive(&self) -> MultiPoly {
        use num_integer::Integer;
        use num_traits::{Signed, Zero};
        if self.is_zero() || !self.terms.values().all(|c| c.is_rational()) {
            return self.monic();
        }
        let den = self.denominator_lcm();
        let cleared = self.scale(&Scalar::from_bigint(den));
        let g = cleared
            .terms
            .values()
            .fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(&c.to_integer().unwrap()));
        let mut g = Scalar::from_bigint(g);
        if cleared.leading_coeff().unwrap().re().is_negative() {
            g = -g;
        }
        cleared.scale(&g.inv().unwrap())
    }

    /// Common denominator of all coefficients (lcm of denominators).
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms.values().fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(&c.denom_lcm()))
    }

    /// Format with the given variable names.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            let (neg, mag) = if c.is_rational() && c.cmp_zero() == std::cmp::Ordering::Less {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&mag.to_short());
            } else if mag.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&mag.to_short());
                s.push('*');
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

/// Default variable names `x0, x1, ...`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars).map(|i| format!("x{}", i)).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names(self.nvars)))
    }
}

/// All monomials of total degree `deg` in `nvars` variables, in descending graded-lex order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Mono> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if i == nvars - 1 {
            cur.push(left as u16);
            out.push(Mono::new(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u16);
            rec(i + 1, nvars, left - e, cur, out);
            cur.pop();
        }
    }
    if nvars == 0 {
        return if deg == 0 { vec![Mono::one(0)] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(0, nvars, deg, &mut Vec::new(), &mut out);
    out
}

/// Binomial coefficient as u64.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "polynomial universe mismatch");
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "polynomial universe mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "polynomial universe mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        if self.is_zero() || o.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl std::ops::AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, o: &MultiPoly) {
        assert_eq!(self.nvars, o.nvars, "polynomial universe mismatch");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }
}

impl std::ops::SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, o: &MultiPoly) {
        assert_eq!(self.nvars, o.nvars, "polynomial universe mismatch");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }
}

macro_rules! forward_poly {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_poly!(Add, add);
forward_poly!(Sub, sub);
forward_poly!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
