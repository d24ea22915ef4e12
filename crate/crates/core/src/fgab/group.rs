use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finitely generated abelian group in invariant-factor normal form:
/// Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_m with 2 ≤ d₁ | d₂ | … | d_m.
///
/// The normal form is unique, so two values are isomorphic iff they are
/// field-equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl Serialize for FgAbGroup {
    /// Groups serialize as their text form, e.g. `"Z + Z/2"`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        FgAbGroup::parse(&text).map_err(de::Error::custom)
    }
}

impl FgAbGroup {
    /// Build from a free rank and a divisor chain; validates 2 ≤ d₁ | … | d_m.
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self> {
        for d in &invariant_factors {
            if *d < BigInt::from(2) {
                return Err(Error::validation(format!(
                    "invariant factor {d} must be at least 2"
                )));
            }
        }
        for w in invariant_factors.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::validation(format!(
                    "invariant factors must form a divisor chain: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(FgAbGroup {
            free_rank,
            invariant_factors,
        })
    }

    /// Normalize arbitrary cyclic orders into the invariant-factor chain.
    /// Orders equal to 1 are dropped; order 0 means a free summand.
    /// Uses the gcd/lcm exchange, so no factorization is needed.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let mut free = 0usize;
        let mut factors: Vec<BigInt> = Vec::new();
        for d in orders {
            let d = d.abs();
            if d.is_zero() {
                free += 1;
            } else if !d.is_one() {
                factors.push(d);
            }
        }
        // Repeatedly replace a violating pair (a, b) by (gcd, lcm); this
        // terminates and yields the divisor chain.
        loop {
            let mut changed = false;
            for i in 0..factors.len() {
                for j in i + 1..factors.len() {
                    let (a, b) = (factors[i].clone(), factors[j].clone());
                    if (&b % &a).is_zero() {
                        continue;
                    }
                    let g = a.gcd(&b);
                    let l = (&a / &g) * &b;
                    factors[i] = g;
                    factors[j] = l;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        factors.retain(|d| !d.is_one());
        factors.sort();
        FgAbGroup {
            free_rank: free,
            invariant_factors: factors,
        }
    }

    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            invariant_factors: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            invariant_factors: vec![],
        }
    }

    /// Z/n (n ≥ 2).
    pub fn cyclic(n: u64) -> Self {
        FgAbGroup::new(0, vec![BigInt::from(n)]).expect("cyclic order >= 2")
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.invariant_factors.is_empty()
    }

    /// Number of generators in the normal-form presentation.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    /// Order of the i-th generator: 0 for the free ones (listed first),
    /// then the invariant factors.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.invariant_factors[i - self.free_rank].clone()
        }
    }

    /// Group order as a number; None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Direct sum of several groups, re-normalized into a divisor chain.
    pub fn direct_sum(groups: &[FgAbGroup]) -> FgAbGroup {
        let mut orders: Vec<BigInt> = Vec::new();
        let mut free = 0usize;
        for g in groups {
            free += g.free_rank;
            orders.extend(g.invariant_factors.iter().cloned());
        }
        let mut sum = FgAbGroup::from_cyclic_orders(&orders);
        sum.free_rank += free;
        sum
    }

    /// Isomorphism test: equality of normal forms.
    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self == other
    }

    /// Parse the text form `Z^r + Z/d1 + Z/d2 ...`; `Z` means `Z^1`,
    /// `0` is the trivial group.
    pub fn parse(text: &str) -> Result<FgAbGroup> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(FgAbGroup::trivial());
        }
        if compact.is_empty() {
            return Err(Error::Parse {
                line: None,
                msg: "empty group expression".into(),
            });
        }
        let mut free = 0usize;
        let mut orders = Vec::new();
        for term in compact.split('+') {
            if term == "Z" {
                free += 1;
            } else if let Some(r) = term.strip_prefix("Z^") {
                free += r.parse::<usize>().map_err(|_| Error::Parse {
                    line: None,
                    msg: format!("invalid free rank `{r}`"),
                })?;
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| Error::Parse {
                    line: None,
                    msg: format!("invalid torsion order `{d}`"),
                })?;
                if d < BigInt::from(2) {
                    return Err(Error::Parse {
                        line: None,
                        msg: format!("torsion order must be >= 2, got {d}"),
                    });
                }
                orders.push(d);
            } else {
                return Err(Error::Parse {
                    line: None,
                    msg: format!("unrecognized group term `{term}`"),
                });
            }
        }
        let mut g = FgAbGroup::from_cyclic_orders(&orders);
        g.free_rank += free;
        Ok(g)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => terms.push("Z".into()),
            r => terms.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            terms.push(format!("Z/{d}"));
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}
