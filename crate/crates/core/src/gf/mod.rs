//! Exact arithmetic in GF(p^h) and in towers GF(q) ⊂ GF(q^t).
//!
//! Every element is a canonical integer code. A field built over a base
//! field of order `b` encodes `Σ d_i x^i` (power basis of the modulus root)
//! as `Σ d_i b^i`, where the digits `d_i` are base-field codes. Prime fields
//! use the residue itself. Because codes nest, the base-`p` digits of any
//! code are its coordinates over the prime field, which makes addition
//! digit-wise mod `p` in every field of the tower.
//!
//! Fields of order at most 2^16 multiply through log/antilog tables; larger
//! fields fall back to polynomial arithmetic.

mod conway;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, as its canonical code.
pub type Elem = u32;

/// Largest field order that gets log/antilog tables.
pub const TABLE_LIMIT: u32 = 1 << 16;
/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 31;
const ADD_TABLE_LIMIT: u32 = 256;

pub use conway::TABLE_VERSION as MODULUS_TABLE_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Pow,
}

/// A finite field: either a prime field, or a simple extension of a base
/// field by a monic irreducible modulus.
///
/// `GF(p^h)` built by [`Field::new`] is an extension of the prime field
/// `GF(p)`; [`Field::extend`] builds `GF(q^t)` relative to an existing
/// `GF(q)`, which is the tower form field reduction needs.
pub struct Field {
    p: u32,
    order: u32,
    degree: u32,
    prime_degree: u32,
    base: Option<Arc<Field>>,
    modulus: Vec<Elem>,
    generator: Elem,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add_table: Vec<Elem>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.descriptor())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.p == other.p
                && self.degree == other.degree
                && self.modulus == other.modulus
                && self.base == other.base)
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `GF(p^h)`. Without an explicit modulus the bundled Conway
    /// table is used (`p^h <= 2^16`).
    pub fn new(p: u32, h: u32, modulus: Option<&[u32]>) -> Result<Arc<Field>> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if h == 0 {
            return Err(Error::InvalidModulus("degree h must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(h).filter(|&o| o <= MAX_ORDER);
        let Some(order) = order else {
            return Err(Error::UnsupportedSize(format!("{p}^{h} exceeds {MAX_ORDER}")));
        };
        if h == 1 {
            return Field::prime_with_modulus(p, modulus);
        }
        let prime = Field::prime(p)?;
        let modulus: Vec<u32> = match modulus {
            Some(m) => m.to_vec(),
            None => match conway::lookup(p, h) {
                Some(m) => m.to_vec(),
                None => {
                    return Err(Error::UnsupportedSize(format!(
                        "no default modulus for GF({order}); supply one"
                    )))
                }
            },
        };
        Field::extend(&prime, h, Some(&modulus))
    }

    /// The prime field `GF(p)` with its default modulus `x - g`.
    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Field::prime_with_modulus(p, None)
    }

    fn prime_with_modulus(p: u32, modulus: Option<&[u32]>) -> Result<Arc<Field>> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if p as u64 > MAX_ORDER {
            return Err(Error::UnsupportedSize(format!("prime {p} exceeds {MAX_ORDER}")));
        }
        let generator = least_primitive_root(p);
        let modulus = match modulus {
            Some(m) => {
                if m.len() != 2 || m[1] != 1 || m[0] >= p {
                    return Err(Error::InvalidModulus(format!(
                        "degree-1 modulus over GF({p}) must be [c, 1] with c < p, got {m:?}"
                    )));
                }
                m.to_vec()
            }
            None => vec![(p - generator) % p, 1],
        };
        let mut field = Field {
            p,
            order: p,
            degree: 1,
            prime_degree: 1,
            base: None,
            modulus,
            generator,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
        };
        field.build_tables();
        Ok(Arc::new(field))
    }

    /// Builds the degree-`t` extension of `base`. Without a modulus, the least
    /// monic primitive polynomial of degree `t` over the base is used, ordered
    /// by the codes of `(e_{t-1}, ..., e_0)`.
    pub fn extend(base: &Arc<Field>, t: u32, modulus: Option<&[Elem]>) -> Result<Arc<Field>> {
        if t == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let order = (base.order as u64)
            .checked_pow(t)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| {
                Error::UnsupportedSize(format!("{}^{t} exceeds {MAX_ORDER}", base.order))
            })? as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != t as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "modulus must have degree exactly {t}, got {} coefficients",
                        m.len()
                    )));
                }
                if m[t as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if let Some(&bad) = m.iter().find(|&&c| c >= base.order) {
                    return Err(Error::InvalidCode { code: bad as u64, order: base.order });
                }
                if let Some(factor) = find_factor(base, m) {
                    return Err(Error::ReducibleModulus(format!(
                        "{} has factor {}",
                        fmt_poly(m),
                        fmt_poly(&factor)
                    )));
                }
                m.to_vec()
            }
            None => default_extension_modulus(base, t, order)?,
        };
        let mut field = Field {
            p: base.p,
            order,
            degree: t,
            prime_degree: base.prime_degree * t,
            base: Some(base.clone()),
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
        };
        field.generator = field.find_generator();
        field.build_tables();
        Ok(Arc::new(field))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree over the immediate base (1 for prime fields).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Degree over the prime field: `order = p^prime_degree`.
    pub fn prime_degree(&self) -> u32 {
        self.prime_degree
    }

    pub fn base(&self) -> Option<&Arc<Field>> {
        self.base.as_ref()
    }

    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    /// A multiplicative generator.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// The `FIELD ...` descriptor, followed by ` EXT ...` for towers.
    pub fn descriptor(&self) -> String {
        let join = |m: &[Elem]| m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        match &self.base {
            None => format!("FIELD p={} h=1 mod={}", self.p, join(&self.modulus)),
            Some(b) if b.base.is_none() => {
                format!("FIELD p={} h={} mod={}", self.p, self.degree, join(&self.modulus))
            }
            Some(b) => format!("{} EXT t={} mod={}", b.descriptor(), self.degree, join(&self.modulus)),
        }
    }

    pub fn is_valid(&self, a: u64) -> bool {
        a < self.order as u64
    }

    pub fn check(&self, a: u64) -> Result<Elem> {
        if self.is_valid(a) {
            Ok(a as Elem)
        } else {
            Err(Error::InvalidCode { code: a, order: self.order })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if !self.add_table.is_empty() {
            self.add_table[(a * self.order + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a == 0 {
            return a;
        }
        let p = self.p;
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.log.is_empty() {
            return self.mul_slow(a, b);
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a != 0);
        if self.log.is_empty() {
            return self.pow(a, self.order as u64 - 2);
        }
        let l = self.log[a as usize];
        self.exp[((self.order - 1 - l) % (self.order - 1)) as usize]
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// `a^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = 1;
        let mut sq = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// The Frobenius map `x ↦ x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Checked arithmetic dispatch. For `Pow`, `b` is the exponent.
    pub fn arith(&self, a: u64, b: u64, op: ArithOp) -> Result<Elem> {
        let a = self.check(a)?;
        match op {
            ArithOp::Pow => Ok(self.pow(a, b)),
            ArithOp::Inv => {
                if a == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(self.inv(a))
                }
            }
            _ => {
                let b = self.check(b)?;
                Ok(match op {
                    ArithOp::Add => self.add(a, b),
                    ArithOp::Sub => self.sub(a, b),
                    ArithOp::Mul => self.mul(a, b),
                    ArithOp::Div => {
                        if b == 0 {
                            return Err(Error::DivisionByZero);
                        }
                        self.div(a, b)
                    }
                    ArithOp::Pow | ArithOp::Inv => unreachable!(),
                })
            }
        }
    }

    /// Coordinates over the immediate base, low to high (`degree` digits).
    pub fn digits(&self, a: Elem) -> Vec<Elem> {
        match &self.base {
            None => vec![a],
            Some(b) => {
                let bo = b.order;
                let mut a = a;
                (0..self.degree)
                    .map(|_| {
                        let d = a % bo;
                        a /= bo;
                        d
                    })
                    .collect()
            }
        }
    }

    /// Inverse of [`Field::digits`]; missing high digits are zero.
    pub fn from_digits(&self, d: &[Elem]) -> Elem {
        match &self.base {
            None => d.first().copied().unwrap_or(0),
            Some(b) => d.iter().rev().fold(0u32, |acc, &x| acc * b.order + x),
        }
    }

    /// Elements of the subfield of order `s` (which must divide the field
    /// as `order = s^k`): the fixed points of `x ↦ x^s`.
    pub fn subfield(&self, s: u32) -> Vec<Elem> {
        (0..self.order).filter(|&x| self.pow(x, s as u64) == x).collect()
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        match &self.base {
            None => ((a as u64 * b as u64) % self.p as u64) as Elem,
            Some(base) => {
                let prod = poly_mulmod(base, &self.digits(a), &self.digits(b), &self.modulus);
                self.from_digits(&prod)
            }
        }
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut acc, mut sq) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, sq);
            }
            sq = self.mul_slow(sq, sq);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> Elem {
        let n = self.order as u64 - 1;
        let factors = prime_factors(n);
        let is_gen = |g: Elem| factors.iter().all(|&r| self.pow_slow(g, n / r) != 1);
        // the modulus root x first, then the least generator by code
        let x = match &self.base {
            Some(b) if self.degree > 1 => b.order,
            _ => 0,
        };
        if x != 0 && is_gen(x) {
            return x;
        }
        (1..self.order).find(|&g| is_gen(g)).expect("finite field has a generator")
    }

    fn build_tables(&mut self) {
        if self.order <= TABLE_LIMIT {
            let n = (self.order - 1) as usize;
            let mut exp = vec![0; 2 * n];
            let mut log = vec![0; self.order as usize];
            let mut x = 1;
            for (i, slot) in exp.iter_mut().take(n).enumerate() {
                *slot = x;
                log[x as usize] = i as u32;
                x = self.mul_slow(x, self.generator);
            }
            for i in n..2 * n {
                exp[i] = exp[i - n];
            }
            self.exp = exp;
            self.log = log;
        }
        if self.p != 2 && self.order <= ADD_TABLE_LIMIT {
            let o = self.order;
            let mut t = vec![0; (o * o) as usize];
            for a in 0..o {
                for b in 0..o {
                    t[(a * o + b) as usize] = self.add_digits(a, b);
                }
            }
            self.add_table = t;
        }
    }
}

/// `GF(q^t)` together with its base `GF(q)`: the scalar side of field
/// reduction. Coordinates of an extension element over the base are the
/// base-`q` digits of its code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    base: Arc<Field>,
    field: Arc<Field>,
}

impl ExtensionSpec {
    pub fn new(base: Arc<Field>, t: u32, modulus: Option<&[Elem]>) -> Result<Self> {
        let field = Field::extend(&base, t, modulus)?;
        Ok(ExtensionSpec { base, field })
    }

    /// Wraps an already built tower field.
    pub fn from_field(field: Arc<Field>) -> Result<Self> {
        let base = field
            .base()
            .cloned()
            .ok_or_else(|| Error::InvalidModulus("a prime field is not an extension".into()))?;
        Ok(ExtensionSpec { base, field })
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.field.degree() as usize
    }

    pub fn q(&self) -> u32 {
        self.base.order()
    }

    /// The base-field element `a` as an element of the extension.
    pub fn embed(&self, a: Elem) -> Result<Elem> {
        self.base.check(a as u64)
    }

    /// Power-basis coordinates over the base.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        self.field.digits(x)
    }

    pub fn from_coords(&self, d: &[Elem]) -> Elem {
        self.field.from_digits(d)
    }

    /// Concatenates the `t` base coordinates of each entry.
    pub fn expand_vector(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        let mut out = Vec::with_capacity(v.len() * self.t());
        for &x in v {
            self.field.check(x as u64)?;
            out.extend(self.field.digits(x));
        }
        Ok(out)
    }

    /// Inverse of [`ExtensionSpec::expand_vector`].
    pub fn collapse_vector(&self, w: &[Elem]) -> Result<Vec<Elem>> {
        let t = self.t();
        if !w.len().is_multiple_of(t) {
            return Err(Error::AmbientMismatch(format!(
                "vector length {} is not a multiple of t = {t}",
                w.len()
            )));
        }
        for &x in w {
            self.base.check(x as u64)?;
        }
        Ok(w.chunks(t).map(|c| self.field.from_digits(c)).collect())
    }
}

/// `a * b mod modulus` for digit vectors over `base`; `modulus` is monic.
fn poly_mulmod(base: &Field, a: &[Elem], b: &[Elem], modulus: &[Elem]) -> Vec<Elem> {
    let n = modulus.len() - 1;
    let mut prod = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = base.add(prod[i + j], base.mul(x, y));
        }
    }
    poly_rem_monic(base, &mut prod, modulus);
    prod.truncate(n);
    prod.resize(n, 0);
    prod
}

/// Reduces `a` in place modulo the monic `m`.
fn poly_rem_monic(base: &Field, a: &mut [Elem], m: &[Elem]) {
    let n = m.len() - 1;
    for k in (n..a.len()).rev() {
        let c = a[k];
        if c == 0 {
            continue;
        }
        for j in 0..=n {
            let t = base.mul(c, m[j]);
            a[k - n + j] = base.sub(a[k - n + j], t);
        }
    }
}

/// A monic factor of degree `1..=deg/2` of `m` over `base`, by exhaustive
/// trial division, or `None` when `m` is irreducible.
fn find_factor(base: &Field, m: &[Elem]) -> Option<Vec<Elem>> {
    let deg = m.len() - 1;
    let b = base.order() as u64;
    for d in 1..=deg / 2 {
        let count = b.pow(d as u32);
        for code in 0..count {
            let mut f: Vec<Elem> = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                f.push((c % b) as Elem);
                c /= b;
            }
            f.push(1);
            let mut r = m.to_vec();
            poly_rem_monic(base, &mut r, &f);
            if r[..d].iter().all(|&x| x == 0) {
                return Some(f);
            }
        }
    }
    None
}

fn default_extension_modulus(base: &Arc<Field>, t: u32, order: u32) -> Result<Vec<Elem>> {
    let b = base.order() as u64;
    let t = t as usize;
    let n = order as u64 - 1;
    let factors = prime_factors(n);
    let total = b.checked_pow(t as u32).unwrap_or(u64::MAX);
    // codes enumerate (e_{t-1}, ..., e_0) with e_{t-1} most significant
    for code in 0..total {
        let mut m = vec![0; t + 1];
        m[t] = 1;
        let mut c = code;
        for e in m.iter_mut().take(t) {
            *e = (c % b) as Elem;
            c /= b;
        }
        if m[0] == 0 && t > 1 {
            continue;
        }
        if t == 1 {
            // x + c: the root -c must generate the base multiplicatively
            let root = base.neg(m[0]);
            if root != 0 && factors.iter().all(|&r| base.pow(root, n / r) != 1) {
                return Ok(m);
            }
            continue;
        }
        let x: Vec<Elem> = (0..t).map(|i| if i == 1 { 1 } else { 0 }).collect();
        let pw = |e: u64| {
            let mut acc: Vec<Elem> = (0..t).map(|i| if i == 0 { 1 } else { 0 }).collect();
            let mut sq = x.clone();
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mulmod(base, &acc, &sq, &m);
                }
                sq = poly_mulmod(base, &sq, &sq, &m);
                e >>= 1;
            }
            acc
        };
        let one: Vec<Elem> = (0..t).map(|i| if i == 0 { 1 } else { 0 }).collect();
        // x of order exactly b^t - 1 forces the quotient ring to be a field
        if pw(n) == one && factors.iter().all(|&r| pw(n / r) != one) {
            return Ok(m);
        }
    }
    Err(Error::UnsupportedSize(format!("no primitive polynomial of degree {t} found")))
}

fn fmt_poly(m: &[Elem]) -> String {
    format!("[{}]", m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn least_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let n = p as u64 - 1;
    let factors = prime_factors(n);
    let powmod = |mut b: u64, mut e: u64| {
        let m = p as u64;
        let mut acc = 1u64;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        acc
    };
    (2..p).find(|&g| factors.iter().all(|&r| powmod(g as u64, n / r) != 1)).unwrap()
}

/// Writes `q` as `p^h`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q);
    if p.len() != 1 {
        return None;
    }
    let p = p[0];
    let (mut r, mut h) = (q, 0);
    while r > 1 {
        r /= p;
        h += 1;
    }
    Some((p as u32, h))
}

/// `GF(q)` with its default modulus, for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<Arc<Field>> {
    let (p, h) = prime_power(q)
        .ok_or_else(|| Error::UnsupportedSize(format!("{q} is not a prime power")))?;
    Field::new(p, h, None)
}
