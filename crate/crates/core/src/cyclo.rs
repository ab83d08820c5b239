//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Every value is stored in the Zumbroich basis of its minimal field: a set of
//! exponents `k` such that the roots `zeta_n^k` form a Q-basis of Q(zeta_n)
//! which is also a Z-basis of the ring of integers. Equality is structural,
//! and a value is an algebraic integer iff all stored coefficients are integers.
//!
//! The basis is the tensor product over the prime powers `q = p^a` exactly
//! dividing `n`. In the `q` component an exponent `e` (mod `q`) is a basis
//! exponent iff
//!
//! * `p = 2`: `e < q / 2`,
//! * `p` odd: the leading base-`p` digit of `e` is nonzero.
//!
//! Non-basis exponents are rewritten with `zeta_{2^a}^{j + 2^(a-1)} = -zeta^j`
//! and `zeta_{p^a}^j = -sum_{h=1}^{p-1} zeta^{j + h p^(a-1)}`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::rc::Rc;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Errors raised by cyclotomic arithmetic and literal parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("galois exponent {j} is not coprime to conductor {conductor}")]
    NotCoprime { j: i64, conductor: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("root of unity order must be positive")]
    ZeroOrder,
    #[error("requested {digits} digits exceeds double precision for this value")]
    PrecisionUnavailable { digits: u32 },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// An exact element of a cyclotomic field in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    /// Sorted by exponent, no zero coefficients.
    coeffs: Vec<(u32, BigRational)>,
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Generators of a decomposition of `(Z/n)^*` into cyclic factors, with their orders.
fn unit_generators(n: u32) -> Vec<(u64, u64)> {
    let n64 = u64::from(n);
    let lift = |q: u64, g: u64| -> u64 {
        // x = g mod q, x = 1 mod n/q
        let rest = n64 / q;
        (0..q).map(|t| 1 + t * rest).find(|x| x % q == g % q).expect("CRT lift")
    };
    let mut out = Vec::new();
    for (p, a) in factorize(n) {
        let (p, a) = (u64::from(p), a);
        let q = p.pow(a);
        if p == 2 {
            if a >= 2 {
                out.push((lift(q, q - 1), 2));
            }
            if a >= 3 {
                out.push((lift(q, 5), q / 4));
            }
            continue;
        }
        let phi = q / p * (p - 1);
        let is_generator = |g: u64| {
            factorize((p - 1) as u32).iter().all(|&(r, _)| mod_pow(g, (p - 1) / u64::from(r), p) != 1)
                && (a == 1 || mod_pow(g, p - 1, p * p) != 1)
        };
        let g = (2..q).find(|&g| g % p != 0 && is_generator(g)).expect("primitive root exists");
        out.push((lift(q, g), phi));
    }
    out
}

pub(crate) fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (g, x, _) = extended_gcd(a as i64, m as i64);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m as i64) as u64
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

struct PrimePart {
    p: u64,
    q: u64,
    /// n / q
    cofactor: u64,
    /// (n / q)^-1 mod q
    cofactor_inv: u64,
}

impl PrimePart {
    fn component(&self, k: u64) -> u64 {
        (k * self.cofactor_inv) % self.q
    }

    fn in_basis(&self, e: u64) -> bool {
        if self.p == 2 {
            e < self.q / 2
        } else {
            e >= self.q / self.p
        }
    }

    /// Basis exponents replacing a non-basis component `e`; the sign is always -1.
    fn replacements(&self, e: u64) -> Vec<u64> {
        if self.p == 2 {
            vec![e - self.q / 2]
        } else {
            let step = self.q / self.p;
            (1..self.p).map(|h| e + h * step).collect()
        }
    }
}

/// Rewriting data for Q(zeta_n).
struct FieldData {
    n: u32,
    /// For every exponent k in 0..n: (negate, basis exponents summing to zeta^k).
    expansion: Vec<(bool, Vec<u32>)>,
}

impl FieldData {
    fn new(n: u32) -> Self {
        let n64 = n as u64;
        let parts: Vec<PrimePart> = factorize(n)
            .into_iter()
            .map(|(p, a)| {
                let q = (p as u64).pow(a);
                let cofactor = n64 / q;
                PrimePart {
                    p: p as u64,
                    q,
                    cofactor,
                    cofactor_inv: mod_inverse(cofactor % q, q),
                }
            })
            .collect();
        let expansion = (0..n64)
            .map(|k| {
                let mut negate = false;
                let mut terms = vec![k];
                for part in &parts {
                    let e = part.component(k);
                    if part.in_basis(e) {
                        continue;
                    }
                    negate = !negate;
                    let reps = part.replacements(e);
                    terms = terms
                        .iter()
                        .flat_map(|&t| {
                            reps.iter().map(move |&r| {
                                // shift only the q-component of t from e to r
                                (t + n64 * part.q + r * part.cofactor - e * part.cofactor) % n64
                            })
                        })
                        .collect();
                }
                let mut terms: Vec<u32> = terms.into_iter().map(|t| t as u32).collect();
                terms.sort_unstable();
                (negate, terms)
            })
            .collect();
        FieldData { n, expansion }
    }

    fn is_basis(&self, k: u32) -> bool {
        let (neg, terms) = &self.expansion[k as usize];
        !neg && terms.len() == 1 && terms[0] == k
    }
}

thread_local! {
    static FIELDS: RefCell<HashMap<u32, Rc<FieldData>>> = RefCell::new(HashMap::new());
}

fn field(n: u32) -> Rc<FieldData> {
    FIELDS.with(|cache| {
        cache
            .borrow_mut()
            .entry(n)
            .or_insert_with(|| Rc::new(FieldData::new(n)))
            .clone()
    })
}

fn lcm(a: u32, b: u32) -> u32 {
    let l = (a as u64).lcm(&(b as u64));
    u32::try_from(l).expect("cyclotomic conductor overflow")
}

/// Reduce a dense coefficient vector over the powers of zeta_n to canonical form.
/// Rewrite a dense vector over all exponents 0..n into basis exponents.
fn expand_dense<T>(fd: &FieldData, dense: Vec<T>) -> Vec<T>
where
    T: Zero + Clone + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
{
    let mut out: Vec<T> = vec![T::zero(); dense.len()];
    for (k, c) in dense.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (neg, terms) = &fd.expansion[k];
        for &t in terms {
            if *neg {
                out[t as usize] -= &c;
            } else {
                out[t as usize] += &c;
            }
        }
    }
    out
}

/// `dense / den` as a cyclotomic, for integer numerators.
fn from_dense_scaled<T>(n: u32, dense: Vec<T>, den: &BigInt) -> Cyclotomic
where
    T: Zero + Clone + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
    BigInt: From<T>,
{
    let to_rational = |c: T| BigRational::new(BigInt::from(c), den.clone());
    if n == 1 {
        return Cyclotomic::from_rational(dense.into_iter().next().map_or_else(BigRational::zero, to_rational));
    }
    let fd = field(n);
    let coeffs = expand_dense(&fd, dense)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as u32, to_rational(c)))
        .collect();
    minimize(fd.n, coeffs)
}

fn from_dense(n: u32, dense: Vec<BigRational>) -> Cyclotomic {
    let den = dense.iter().filter(|c| !c.is_zero()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums: Vec<BigInt> = dense.into_iter().map(|c| (c * &den).to_integer()).collect();
    from_dense_scaled(n, nums, &den)
}

/// Integer numerators over a common denominator.
fn integral_parts(coeffs: &[(u32, BigRational)]) -> (Vec<(u32, BigInt)>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let nums = coeffs.iter().map(|(k, c)| (*k, (c * &den).to_integer())).collect();
    (nums, den)
}

/// Move a canonical value in Q(zeta_n) down to its minimal field.
fn minimize(mut n: u32, mut coeffs: Vec<(u32, BigRational)>) -> Cyclotomic {
    if coeffs.is_empty() {
        return Cyclotomic::zero();
    }
    'outer: while n > 1 {
        for (p, a) in factorize(n) {
            if p == 2 || a >= 2 {
                if coeffs.iter().all(|(k, _)| k % p == 0) {
                    n /= p;
                    for (k, _) in coeffs.iter_mut() {
                        *k /= p;
                    }
                    continue 'outer;
                }
            } else {
                let m = n / p;
                let inv = mod_inverse((m % p) as u64, p as u64) as u32;
                let mut groups: BTreeMap<u32, (u32, &BigRational)> = BTreeMap::new();
                let mut ok = true;
                for (k, c) in &coeffs {
                    let e = ((*k as u64 * inv as u64) % p as u64) as u32;
                    let base = ((*k as u64 + n as u64 - e as u64 * m as u64) % n as u64) as u32;
                    let slot = groups.entry(base).or_insert((0, c));
                    if slot.1 != c {
                        ok = false;
                        break;
                    }
                    slot.0 += 1;
                }
                if ok && groups.values().all(|(count, _)| *count == p - 1) {
                    let reduced: Vec<(u32, BigRational)> =
                        groups.into_iter().map(|(base, (_, c))| (base / p, -c)).collect();
                    coeffs = reduced;
                    coeffs.sort_by_key(|(k, _)| *k);
                    n = m;
                    continue 'outer;
                }
            }
        }
        break;
    }
    if n == 1 {
        debug_assert_eq!(coeffs.len(), 1);
    }
    Cyclotomic { conductor: n, coeffs }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(v))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Cyclotomic { conductor: 1, coeffs: vec![(0, r)] }
        }
    }

    /// zeta_n^k in canonical form.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut dense = vec![BigRational::zero(); n as usize];
        dense[k] = BigRational::one();
        Ok(from_dense(n, dense))
    }

    /// Shorthand for `E(n)`.
    pub fn e(n: u32) -> Self {
        Self::root_of_unity(n, 1).expect("positive order")
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical (exponent, coefficient) pairs over zeta_conductor.
    pub fn coeffs(&self) -> &[(u32, BigRational)] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs.len() == 1 && self.coeffs[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.conductor != 1 {
            return None;
        }
        Some(self.coeffs.first().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero))
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|(_, c)| c.is_integer())
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Sum of absolute values of basis coefficients; bounds |sigma(x)| for every embedding.
    pub fn coeff_l1(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, (_, c)| acc + c.abs())
    }

    fn lift(&self, n: u32) -> Vec<BigRational> {
        debug_assert_eq!(n % self.conductor, 0);
        let step = n / self.conductor;
        let mut dense = vec![BigRational::zero(); n as usize];
        for (k, c) in &self.coeffs {
            dense[(k * step) as usize] = c.clone();
        }
        dense
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.conductor == 1 && other.conductor == 1 {
            return Self::from_rational(&self.coeffs[0].1 + &other.coeffs[0].1);
        }
        let n = lcm(self.conductor, other.conductor);
        let mut dense = self.lift(n);
        let step = n / other.conductor;
        for (k, c) in &other.coeffs {
            dense[(k * step) as usize] += c;
        }
        if n == self.conductor && n == other.conductor {
            // both already canonical in the same basis
            let fd = field(n);
            debug_assert!(self.coeffs.iter().all(|(k, _)| fd.is_basis(*k)));
            let coeffs = dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as u32, c))
                .collect();
            return minimize(n, coeffs);
        }
        from_dense(n, dense)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0].1);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0].1);
        }
        let n = lcm(self.conductor, other.conductor);
        let (sa, sb) = (n / self.conductor, n / other.conductor);
        let (na, da) = integral_parts(&self.coeffs);
        let (nb, db) = integral_parts(&other.coeffs);
        let den = da * db;
        let slot = |ka: u32, kb: u32| (((ka * sa) as u64 + (kb * sb) as u64) % n as u64) as usize;
        // Products are summed at most |a||b| times, then spread over at most n basis terms.
        let bits = |v: &[(u32, BigInt)]| v.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
        let headroom = 64 - ((na.len() * nb.len()) as u64 * u64::from(n)).leading_zeros() as u64;
        if bits(&na) + bits(&nb) + headroom < 126 {
            let a: Vec<(u32, i128)> = na.iter().map(|(k, c)| (*k, c.to_i128().expect("fits"))).collect();
            let b: Vec<(u32, i128)> = nb.iter().map(|(k, c)| (*k, c.to_i128().expect("fits"))).collect();
            let mut dense = vec![0i128; n as usize];
            for (ka, ca) in &a {
                for (kb, cb) in &b {
                    dense[slot(*ka, *kb)] += ca * cb;
                }
            }
            return from_dense_scaled(n, dense, &den);
        }
        let mut dense = vec![BigInt::zero(); n as usize];
        for (ka, ca) in &na {
            for (kb, cb) in &nb {
                dense[slot(*ka, *kb)] += ca * cb;
            }
        }
        from_dense_scaled(n, dense, &den)
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    pub fn div_rational(&self, r: &BigRational) -> Result<Self, CycloError> {
        if r.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        Ok(self.scale(&r.recip()))
    }

    /// Apply zeta_n -> zeta_n^j to the stored exponents without coprimality checks.
    fn map_exponents(&self, j: i64) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor;
        let j = j.rem_euclid(n as i64) as u64;
        let mut dense = vec![BigRational::zero(); n as usize];
        for (k, c) in &self.coeffs {
            dense[((*k as u64 * j) % n as u64) as usize] += c;
        }
        from_dense(n, dense)
    }

    /// Complex conjugate.
    pub fn conjugate(&self) -> Self {
        self.map_exponents(-1)
    }

    /// The field automorphism zeta_n -> zeta_n^j, n the conductor.
    pub fn galois_apply(&self, j: i64) -> Result<Self, CycloError> {
        let n = self.conductor as i64;
        if j.gcd(&n) != 1 {
            return Err(CycloError::NotCoprime { j, conductor: self.conductor });
        }
        Ok(self.map_exponents(j))
    }

    /// a * conj(a); totally real.
    pub fn abs_squared(&self) -> Self {
        self.mul_ref(&self.conjugate())
    }

    /// `Π_{0<=i<k} σ_g^i(self)`, by doubling.
    fn orbit_product(&self, g: u64, k: u64) -> Self {
        let n = u64::from(self.conductor.max(1));
        match k {
            0 => Self::one(),
            1 => self.clone(),
            _ if k % 2 == 0 => {
                let half = self.orbit_product(g, k / 2);
                let shifted = half.map_exponents(mod_pow(g, k / 2, n) as i64);
                half.mul_ref(&shifted)
            }
            _ => {
                let rest = self.orbit_product(g, k - 1);
                rest.mul_ref(&self.map_exponents(mod_pow(g, k - 1, n) as i64))
            }
        }
    }

    /// `(c, N)` with `self * c = N` rational: iterated relative norms over the
    /// cyclic factors of the Galois group.
    fn norm_cofactor(&self) -> (Self, BigRational) {
        let mut x = self.clone();
        let mut cofactor = Self::one();
        for (g, order) in unit_generators(self.conductor) {
            if x.is_rational() {
                break;
            }
            let q = x.orbit_product(g, order - 1).map_exponents(g as i64);
            x = x.mul_ref(&q);
            cofactor = cofactor.mul_ref(&q);
        }
        (cofactor, x.as_rational().expect("norm is rational"))
    }

    /// Field norm from Q(zeta_conductor) down to Q.
    pub fn norm(&self) -> BigRational {
        self.norm_cofactor().1
    }

    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let (cofactor, norm) = self.norm_cofactor();
        Ok(cofactor.scale(&norm.recip()))
    }

    /// Exact quotient `self / other`.
    pub fn div(&self, other: &Self) -> Result<Self, CycloError> {
        if other.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(&r.recip()));
        }
        Ok(self.mul_ref(&other.inverse()?))
    }

    pub fn pow(&self, exp: i64) -> Result<Self, CycloError> {
        let mut base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Double-precision value (re, im).
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * (*k as f64) / n;
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }

    /// Approximation guaranteed within `10^-digits`, when double precision allows it.
    pub fn approx_complex(&self, digits: u32) -> Result<(f64, f64), CycloError> {
        let bound = self.coeff_l1().to_f64().unwrap_or(f64::INFINITY);
        let err = 16.0 * f64::EPSILON * (bound + 1.0) * (self.coeffs.len() as f64 + 1.0);
        if err >= 10f64.powi(-(digits as i32)) {
            return Err(CycloError::PrecisionUnavailable { digits });
        }
        Ok(self.approx())
    }

    /// Sign of a real value, decided exactly for rationals and by a certified
    /// separation bound otherwise. `None` for non-real values or when double
    /// precision cannot separate the value from zero.
    pub fn real_sign(&self) -> Option<Ordering> {
        if let Some(r) = self.as_rational() {
            return Some(r.cmp(&BigRational::zero()));
        }
        if !self.is_real() {
            return None;
        }
        // |x| * B^(phi-1) >= |N(x)| where B bounds every conjugate.
        let norm = self.norm().abs().to_f64()?;
        let bound = self.coeff_l1().to_f64()?;
        let phi = (1..self.conductor as i64)
            .filter(|j| j.gcd(&(self.conductor as i64)) == 1)
            .count() as i32;
        let lower = norm / bound.powi(phi - 1);
        let err = 16.0 * f64::EPSILON * (bound + 1.0) * (self.coeffs.len() as f64 + 1.0);
        let (re, _) = self.approx();
        if lower > 2.0 * err && re.abs() > err {
            Some(if re > 0.0 { Ordering::Greater } else { Ordering::Less })
        } else {
            None
        }
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$imp(rhs)
            }
        }
        impl $trait<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$imp(&rhs)
            }
        }
        impl $trait<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Mul, mul, mul_ref);

impl Cyclotomic {
    fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&-other)
    }
}
forward_binop!(Sub, sub, sub_ref);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Cyclotomic> for Cyclotomic {
    fn sum<I: Iterator<Item = &'a Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let n = self.conductor;
        let mut out = String::new();
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let term = if *k == 0 {
                c.to_string()
            } else {
                let root = if *k == 1 { format!("E({n})") } else { format!("E({n})^{k}") };
                if c.is_one() {
                    root
                } else if (-c).is_one() {
                    format!("-{root}")
                } else {
                    format!("{c}*{root}")
                }
            };
            if i > 0 && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// Literal grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | atom ('^' ['-'] INT)?
//   atom   := INT | INT '/' INT | 'E(' INT ')' | '(' expr ')'
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, CycloError> {
        Err(CycloError::Parse { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), CycloError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", ch as char))
        }
    }

    fn int(&mut self) -> Result<BigInt, CycloError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn expr(&mut self) -> Result<Cyclotomic, CycloError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, CycloError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Cyclotomic, CycloError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let negative = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let at = self.pos;
            let e = self.int()?;
            let Some(e) = e.to_i64() else {
                self.pos = at;
                return self.err("exponent too large");
            };
            let e = if negative { -e } else { e };
            return base.pow(e).or_else(|err| {
                self.pos = at;
                self.err(err.to_string())
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Cyclotomic, CycloError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(')?;
                let at = self.pos;
                let n = self.int()?;
                let n = match n.to_u32() {
                    Some(n) if n > 0 => n,
                    _ => {
                        self.pos = at;
                        return self.err("root of unity order must be a positive 32-bit integer");
                    }
                };
                self.expect(b')')?;
                Ok(Cyclotomic::e(n))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.int()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.int()?;
                    if den.is_zero() {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    Ok(Cyclotomic::from_rational(BigRational::new(num, den)))
                } else {
                    Ok(Cyclotomic::from_bigint(num))
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for Cyclotomic {
    type Err = CycloError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}
