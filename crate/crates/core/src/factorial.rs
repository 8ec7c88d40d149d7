//! Prime factorizations of factorials.
//!
//! Ratios of factorials are formed as exponent vectors over the primes and
//! only multiplied out at the end, after common factors have been cancelled.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

/// Prime factorization of `n!`, with `exponents[i]` the multiplicity of the
/// `i`-th prime (2, 3, 5, ...). Only primes `<= n` are listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredFactorial {
    n: u64,
    exponents: Vec<u64>,
}

impl FactoredFactorial {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Exponents indexed by prime position, see [`primes_up_to`].
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `(prime, multiplicity)` pairs in increasing prime order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let primes = primes_up_to(self.n);
        self.exponents.iter().enumerate().map(move |(i, &e)| (primes[i], e))
    }

    pub fn to_map(&self) -> HashMap<u64, u64> {
        self.iter().collect()
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> BigUint {
        let factors: Vec<(u64, u64)> = self.iter().collect();
        product_of_powers(&factors)
    }
}

fn sieve(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

struct PrimeTable {
    limit: u64,
    primes: Arc<Vec<u64>>,
}

static PRIMES: OnceLock<RwLock<PrimeTable>> = OnceLock::new();

/// All primes `<= n` (shared table, grown on demand).
pub fn primes_up_to(n: u64) -> Arc<Vec<u64>> {
    let lock = PRIMES.get_or_init(|| {
        RwLock::new(PrimeTable { limit: 1024, primes: Arc::new(sieve(1024)) })
    });
    let table = {
        let guard = lock.read().unwrap();
        (guard.limit >= n).then(|| guard.primes.clone())
    };
    let table = match table {
        Some(t) => t,
        None => {
            let mut guard = lock.write().unwrap();
            if guard.limit < n {
                let limit = n.max(2 * guard.limit);
                *guard = PrimeTable { limit, primes: Arc::new(sieve(limit)) };
            }
            guard.primes.clone()
        }
    };
    let count = table.partition_point(|&p| p <= n);
    if count == table.len() {
        table
    } else {
        Arc::new(table[..count].to_vec())
    }
}

/// Number of primes `<= n`.
pub fn prime_count(n: u64) -> usize {
    primes_up_to(n).len()
}

fn legendre(n: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut q = n / p;
    while q > 0 {
        e += q;
        q /= p;
    }
    e
}

static CACHE: OnceLock<RwLock<HashMap<u64, Arc<FactoredFactorial>>>> = OnceLock::new();

/// Prime factorization of `n!`, computed by Legendre's formula and cached.
///
/// The cache tolerates concurrent inserts; a racing insert for the same `n`
/// stores an identical value.
pub fn factorial_factored(n: u64) -> Arc<FactoredFactorial> {
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(hit) = cache.read().unwrap().get(&n) {
        return hit.clone();
    }
    let primes = primes_up_to(n);
    let exponents = primes.iter().map(|&p| legendre(n, p)).collect();
    let value = Arc::new(FactoredFactorial { n, exponents });
    cache.write().unwrap().insert(n, value.clone());
    value
}

/// Signed prime-exponent vector for a ratio of factorials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Exponents(pub Vec<i64>);

impl Exponents {
    pub fn zeros(len: usize) -> Self {
        Exponents(vec![0; len])
    }

    pub fn add_factorial(&mut self, n: u64) {
        self.add_scaled_factorial(n, 1);
    }

    pub fn sub_factorial(&mut self, n: u64) {
        self.add_scaled_factorial(n, -1);
    }

    pub fn add_scaled_factorial(&mut self, n: u64, scale: i64) {
        let f = factorial_factored(n);
        if self.0.len() < f.exponents.len() {
            self.0.resize(f.exponents.len(), 0);
        }
        for (slot, &e) in self.0.iter_mut().zip(&f.exponents) {
            *slot += scale * e as i64;
        }
    }

    /// Splits into `(numerator, denominator)` as plain integers.
    pub fn to_ratio(&self) -> (BigUint, BigUint) {
        let primes = primes_up_to(prime_at_least(self.0.len()));
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                num.push((primes[i], e as u64));
            } else if e < 0 {
                den.push((primes[i], (-e) as u64));
            }
        }
        (product_of_powers(&num), product_of_powers(&den))
    }
}

// A bound `n` such that `primes_up_to(n)` has at least `count` entries.
fn prime_at_least(count: usize) -> u64 {
    if count == 0 {
        return 1;
    }
    let mut n = 16u64;
    loop {
        let primes = primes_up_to(n);
        if primes.len() >= count {
            return primes[count - 1];
        }
        n *= 2;
    }
}

/// `prod p^e` using a balanced product tree.
pub fn product_of_powers(factors: &[(u64, u64)]) -> BigUint {
    let mut terms: Vec<BigUint> = factors
        .iter()
        .filter(|&&(_, e)| e > 0)
        .map(|&(p, e)| BigUint::from(p).pow(e as u32))
        .collect();
    if terms.is_empty() {
        return BigUint::one();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().unwrap()
}
