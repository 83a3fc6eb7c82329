use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use rand::Rng;

use super::field::{is_prime, Field, FieldSpec, Ring, ScalarField};
use super::matrix::{gauss_det, Matrix};
use crate::error::{Error, Result};

/// Source of the prime modulus for [`Fp`].
pub trait Modulus: Copy + Eq + Hash + fmt::Debug + Send + Sync + 'static {
    fn modulus() -> u32;
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ConstModulus<const P: u32>;

impl<const P: u32> Modulus for ConstModulus<P> {
    fn modulus() -> u32 {
        P
    }
}

static RUNTIME_MODULUS: OnceLock<u32> = OnceLock::new();

/// Modulus chosen once per process, for primes only known at run time.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RuntimeModulus;

impl Modulus for RuntimeModulus {
    fn modulus() -> u32 {
        *RUNTIME_MODULUS
            .get()
            .expect("runtime modulus used before set_runtime_modulus")
    }
}

/// Fix the process-wide modulus of `Fp<RuntimeModulus>`. Setting the same
/// prime twice is allowed; switching to another one is not.
pub fn set_runtime_modulus(p: u32) -> Result<()> {
    if !is_prime(p as u64) || p >= 1 << 31 {
        return Err(Error::BadModulus(p as u64));
    }
    let current = *RUNTIME_MODULUS.get_or_init(|| p);
    if current != p {
        return Err(Error::ModulusConflict {
            current,
            requested: p,
        });
    }
    Ok(())
}

/// Residue class modulo a prime below 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<M: Modulus> {
    value: u32,
    _m: PhantomData<M>,
}

pub type F3 = Fp<ConstModulus<3>>;
pub type F5 = Fp<ConstModulus<5>>;
pub type F7 = Fp<ConstModulus<7>>;
pub type F101 = Fp<ConstModulus<101>>;

impl<M: Modulus> Fp<M> {
    pub fn new(v: i64) -> Self {
        let p = M::modulus() as i64;
        Fp {
            value: v.rem_euclid(p) as u32,
            _m: PhantomData,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    fn raw(value: u32) -> Self {
        Fp {
            value,
            _m: PhantomData,
        }
    }
}

impl<M: Modulus> fmt::Debug for Fp<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<M: Modulus> fmt::Display for Fp<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<M: Modulus> Add for Fp<M> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let p = M::modulus() as u64;
        Self::raw(((self.value as u64 + o.value as u64) % p) as u32)
    }
}

impl<M: Modulus> Sub for Fp<M> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let p = M::modulus() as u64;
        Self::raw(((self.value as u64 + p - o.value as u64) % p) as u32)
    }
}

impl<M: Modulus> Mul for Fp<M> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let p = M::modulus() as u64;
        Self::raw(((self.value as u64 * o.value as u64) % p) as u32)
    }
}

impl<M: Modulus> Div for Fp<M> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in prime field")
    }
}

impl<M: Modulus> Neg for Fp<M> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.value == 0 {
            self
        } else {
            Self::raw(M::modulus() - self.value)
        }
    }
}

impl<M: Modulus> Ring for Fp<M> {
    fn zero() -> Self {
        Self::raw(0)
    }
    fn one() -> Self {
        Self::raw(1 % M::modulus())
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn from_int(n: i64) -> Self {
        Self::new(n)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| *self * i)
    }
    fn det(m: &Matrix<Self>) -> Self {
        gauss_det(m)
    }
}

impl<M: Modulus> Field for Fp<M> {
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let p = M::modulus() as u64;
        let mut base = self.value as u64;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Some(Self::raw(acc as u32))
    }
}

impl<M: Modulus> ScalarField for Fp<M> {
    fn characteristic() -> u64 {
        M::modulus() as u64
    }

    fn spec() -> FieldSpec {
        FieldSpec::Prime(M::modulus())
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid residue `{s}`"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Self::new(d).inv().map(|i| Self::new(n) * i).ok_or_else(bad)
            }
            None => s.parse::<i64>().map(Self::new).map_err(|_| bad()),
        }
    }

    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::raw(rng.gen_range(0..M::modulus()))
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..M::modulus()).map(Self::raw).collect())
    }
}
