//! Unipotent theta correspondence on symbols: the relations `B±`, the pair
//! sets of the unipotent Weil character, the minimal-partner maps `θ₀` and a
//! scanning oracle for first occurrences.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{parse_error, Error, Result};
use crate::partition::{interleaves, partitions_of, BetaSet, Bipartition, Partition};
use crate::symbol::{
    enumerate_series, orthogonal_sign, partition_from_symbol, symbol_from_partition, unitary_core_of_defect,
    SeriesFamily, SeriesTag, Sign, Symbol,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn offset(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "even" | "u-even" => Ok(Parity::Even),
            "odd" | "u-odd" => Ok(Parity::Odd),
            other => Err(parse_error("parity", other, "expected even or odd")),
        }
    }
}

/// `B⁺` / `B⁻` on the `Υ` images of two symbols.
pub fn in_b_upsilon(lhs: &Bipartition, rhs: &Bipartition, sign: Sign) -> bool {
    match sign {
        Sign::Plus => interleaves(&lhs.lower, &rhs.upper) && interleaves(&rhs.lower, &lhs.upper),
        Sign::Minus => interleaves(&lhs.upper, &rhs.lower) && interleaves(&rhs.upper, &lhs.lower),
    }
}

pub fn in_b_relation(lhs: &Symbol, rhs: &Symbol, sign: Sign) -> bool {
    in_b_upsilon(&lhs.upsilon(), &rhs.upsilon(), sign)
}

fn require_sp(s: &Symbol) -> Result<()> {
    if s.defect().rem_euclid(4) == 1 {
        Ok(())
    } else {
        Err(Error::BadDefectClass { symbol: s.to_string(), defect: s.defect(), expected: "1 mod 4" })
    }
}

fn require_orth(s: &Symbol) -> Result<Sign> {
    orthogonal_sign(s).ok_or_else(|| Error::BadDefectClass {
        symbol: s.to_string(),
        defect: s.defect(),
        expected: "0 or 2 mod 4",
    })
}

/// `B_{Sp,O^ε}`: the `B^ε` condition plus `def(orth) = ε - def(sp)`.
pub fn in_b_sp_oeven(sp: &Symbol, orth: &Symbol, eps: Sign) -> Result<bool> {
    require_sp(sp)?;
    Ok(orth.defect() == eps.value() - sp.defect() && in_b_relation(sp, orth, eps))
}

/// Partner defects admitted by the `B⁺` and `B⁻` branches of the unitary relation.
pub fn uu_defect_tables(defect: i32) -> ([i32; 2], [i32; 2]) {
    if defect.rem_euclid(2) == 0 {
        ([-defect, -defect + 1], [-defect - 2, -defect - 1])
    } else {
        ([-defect + 1, -defect + 2], [-defect - 1, -defect])
    }
}

/// Which branches of the unitary relation hold, as `(B⁺ branch, B⁻ branch)`.
pub fn uu_branches(l1: &Symbol, l2: &Symbol) -> (bool, bool) {
    let (plus, minus) = uu_defect_tables(l1.defect());
    let d = l2.defect();
    (plus.contains(&d) && in_b_relation(l1, l2, Sign::Plus), minus.contains(&d) && in_b_relation(l1, l2, Sign::Minus))
}

pub fn in_b_uu(l1: &Symbol, l2: &Symbol) -> bool {
    let (plus, minus) = uu_branches(l1, l2);
    plus || minus
}

/// Pairs `(Λ, Λ')` of `S_{Sp_2n} × S_{O^ε_2n'}` related by `B_{Sp,O^ε}`.
pub fn weil_pairs(n: u32, eps: Sign, n_prime: u32) -> Vec<(Symbol, Symbol)> {
    let sp = enumerate_series(SeriesTag::new(SeriesFamily::Sp, n)).expect("sp series");
    let orth = enumerate_series(SeriesTag::new(SeriesFamily::orthogonal(eps), n_prime)).expect("o series");
    let mut out = Vec::new();
    for a in &sp {
        for b in &orth {
            if in_b_sp_oeven(a, b, eps).expect("sp series symbol") {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Pairs `(λ, λ')` with `|λ| = n`, `|λ'| = n'` and `Λ_λ`, `Λ_λ'` related.
///
/// Panics if a pair is related through the branch that the parity of
/// `n + n'` excludes.
pub fn weil_pairs_unitary(n: u32, n_prime: u32) -> Vec<(Partition, Partition)> {
    let expected = if (n + n_prime).is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
    let right: Vec<(Partition, Symbol)> = partitions_of(n_prime)
        .into_iter()
        .map(|p| {
            let s = symbol_from_partition(&p);
            (p, s)
        })
        .collect();
    let mut out = Vec::new();
    for lambda in partitions_of(n) {
        let left = symbol_from_partition(&lambda);
        for (mu, right) in &right {
            let (plus, minus) = uu_branches(&left, right);
            assert!(
                !(plus && expected == Sign::Minus) && !(minus && expected == Sign::Plus),
                "unitary pair ({lambda}, {mu}) uses the wrong branch for n + n' = {}",
                n + n_prime
            );
            if plus || minus {
                out.push((lambda.clone(), mu.clone()));
            }
        }
    }
    out
}

/// The minimal-rank partner map `θ₀^ε`, defined on any symbol.
pub fn theta_zero(s: &Symbol, eps: Sign) -> Symbol {
    let s = s.normalize();
    let (top, bottom) = (s.top(), s.bottom());
    match eps {
        Sign::Plus if !top.is_empty() => Symbol::new(bottom.clone(), top.without_max()),
        Sign::Plus => Symbol::new(bottom.shifted_up(), BetaSet::empty()),
        Sign::Minus if !bottom.is_empty() => Symbol::new(bottom.without_max(), top.clone()),
        Sign::Minus => Symbol::new(BetaSet::empty(), top.shifted_up()),
    }
    .normalize()
}

pub fn theta_zero_sp(s: &Symbol, eps: Sign) -> Result<Symbol> {
    require_sp(s)?;
    Ok(theta_zero(s, eps))
}

pub fn theta_zero_orth(s: &Symbol) -> Result<Symbol> {
    let eps = require_orth(s)?;
    Ok(theta_zero(s, eps))
}

/// Closed-form unitary first-occurrence partner of the given parity.
///
/// `θ₀^ε(Λ_λ)` has odd defect, so it is not itself of the form `Λ_λ'`; the
/// partner is the unitary symbol with the same `Υ` and the even defect from
/// the matching branch table.
pub fn theta_zero_unitary(lambda: &Partition, parity: Parity) -> Partition {
    let source = symbol_from_partition(lambda);
    let eps = if Parity::of(lambda.size()) == parity { Sign::Plus } else { Sign::Minus };
    let d = source.defect();
    let partner_defect = match eps {
        Sign::Plus => -d,
        Sign::Minus => -d - 2,
    };
    let upsilon = theta_zero(&source, eps).upsilon();
    partition_from_symbol(&Symbol::with_upsilon(&upsilon, partner_defect)).expect("even defect gives a unitary symbol")
}

/// A symbol together with its `Υ` image and, for unitary series, its partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indexed {
    pub symbol: Symbol,
    pub upsilon: Bipartition,
    pub partition: Option<Partition>,
}

type Slice = Arc<[Indexed]>;

/// Memoized series enumerations, split by defect. Owned by the caller and
/// safe to share between threads.
#[derive(Debug, Default)]
pub struct SeriesCache {
    by_defect: RwLock<HashMap<SeriesTag, Arc<HashMap<i32, Slice>>>>,
}

impl SeriesCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn build(tag: SeriesTag) -> HashMap<i32, Slice> {
        let mut groups: HashMap<i32, Vec<Indexed>> = HashMap::new();
        if tag.family == SeriesFamily::U {
            for p in partitions_of(tag.rank) {
                let symbol = symbol_from_partition(&p);
                groups.entry(symbol.defect()).or_default().push(Indexed {
                    upsilon: symbol.upsilon(),
                    symbol,
                    partition: Some(p),
                });
            }
        } else {
            for symbol in enumerate_series(tag).expect("defect-governed family") {
                groups.entry(symbol.defect()).or_default().push(Indexed {
                    upsilon: symbol.upsilon(),
                    symbol,
                    partition: None,
                });
            }
        }
        groups.into_iter().map(|(d, v)| (d, v.into())).collect()
    }

    fn table(&self, tag: SeriesTag) -> Arc<HashMap<i32, Slice>> {
        if let Some(t) = self.by_defect.read().expect("cache lock").get(&tag) {
            return t.clone();
        }
        let built = Arc::new(Self::build(tag));
        self.by_defect.write().expect("cache lock").entry(tag).or_insert(built).clone()
    }

    /// Members of the series with the given defect, in enumeration order.
    pub fn with_defect(&self, tag: SeriesTag, defect: i32) -> Slice {
        self.table(tag).get(&defect).cloned().unwrap_or_else(|| Arc::from(Vec::new()))
    }

    /// The whole series, sorted by defect then rows (unitary: by defect then partition order).
    pub fn all(&self, tag: SeriesTag) -> Vec<Indexed> {
        let table = self.table(tag);
        let mut defects: Vec<i32> = table.keys().copied().collect();
        defects.sort_unstable();
        defects.iter().flat_map(|d| table[d].iter().cloned()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstOccurrence {
    pub partner: Symbol,
    pub partner_series: SeriesTag,
    pub space_dimension: u32,
    /// Every partner at the minimal rank, in enumeration order.
    pub witnesses: Vec<Symbol>,
}

/// Scans the target series rank by rank for the first related symbol.
///
/// `s` must be a symplectic symbol with an even orthogonal target, or an even
/// orthogonal symbol with the symplectic target.
pub fn first_occurrence_bruteforce(cache: &SeriesCache, s: &Symbol, target: SeriesFamily) -> Result<FirstOccurrence> {
    let s = s.normalize();
    let upsilon = s.upsilon();
    // (sign of the relation, defect the partner must have, source is the Sp side)
    let (eps, partner_defect, source_is_sp) = match (SeriesFamily::of_defect(s.defect()), target) {
        (Some(SeriesFamily::Sp), SeriesFamily::OEvenPlus | SeriesFamily::OEvenMinus) => {
            let eps = if target == SeriesFamily::OEvenPlus { Sign::Plus } else { Sign::Minus };
            (eps, eps.value() - s.defect(), true)
        }
        (Some(f @ (SeriesFamily::OEvenPlus | SeriesFamily::OEvenMinus)), SeriesFamily::Sp) => {
            let eps = if f == SeriesFamily::OEvenPlus { Sign::Plus } else { Sign::Minus };
            (eps, eps.value() - s.defect(), false)
        }
        (None, _) => {
            return Err(Error::BadDefectClass {
                symbol: s.to_string(),
                defect: s.defect(),
                expected: "0, 1 or 2 mod 4",
            })
        }
        _ => return Err(Error::UnsupportedTarget),
    };
    let cap = 2 * s.rank() + 2;
    for rank in 0..=cap {
        let tag = SeriesTag::new(target, rank);
        let witnesses: Vec<Symbol> = cache
            .with_defect(tag, partner_defect)
            .iter()
            .filter(|c| {
                if source_is_sp {
                    in_b_upsilon(&upsilon, &c.upsilon, eps)
                } else {
                    in_b_upsilon(&c.upsilon, &upsilon, eps)
                }
            })
            .map(|c| c.symbol.clone())
            .collect();
        if let Some(partner) = witnesses.first() {
            return Ok(FirstOccurrence {
                partner: partner.clone(),
                partner_series: tag,
                space_dimension: 2 * rank,
                witnesses,
            });
        }
    }
    Err(Error::CapExceeded { cap: 2 * cap })
}

/// Smallest `n'` of the given parity with a related unitary character of `U_n'`.
pub fn first_occurrence_unitary(cache: &SeriesCache, lambda: &Partition, parity: Parity) -> Result<FirstOccurrence> {
    let source = symbol_from_partition(lambda);
    let (plus, minus) = uu_defect_tables(source.defect());
    let defects: Vec<i32> = plus.into_iter().chain(minus).filter(|&d| unitary_core_of_defect(d).is_some()).collect();
    let cap = 2 * lambda.size() + 2;
    for n_prime in (parity.offset()..=cap).step_by(2) {
        let tag = SeriesTag::new(SeriesFamily::U, n_prime);
        let mut found: Vec<&Indexed> = Vec::new();
        let slices: Vec<Slice> = defects.iter().map(|&d| cache.with_defect(tag, d)).collect();
        for slice in &slices {
            found.extend(slice.iter().filter(|c| in_b_uu(&source, &c.symbol)));
        }
        if !found.is_empty() {
            found.sort_by(|a, b| b.partition.cmp(&a.partition));
            return Ok(FirstOccurrence {
                partner: found[0].symbol.clone(),
                partner_series: tag,
                space_dimension: n_prime,
                witnesses: found.iter().map(|c| c.symbol.clone()).collect(),
            });
        }
    }
    Err(Error::CapExceeded { cap })
}

/// Which group a unipotent symbol is read as for the preservation identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnipotentGroup {
    Sp,
    #[serde(rename = "o")]
    OEven,
    U,
}

/// `(sum of the two first occurrences, closed form)` for a unipotent character,
/// with both first occurrences found by the scanning oracles.
pub fn preservation_sum_unipotent(cache: &SeriesCache, s: &Symbol, group: UnipotentGroup) -> Result<(i64, i64)> {
    let undetermined = || Error::SeriesUndetermined(s.to_string());
    let n = s.rank() as i64;
    let delta = s.delta() as i64;
    match group {
        UnipotentGroup::Sp => {
            require_sp(s).map_err(|_| undetermined())?;
            let plus = first_occurrence_bruteforce(cache, s, SeriesFamily::OEvenPlus)?;
            let minus = first_occurrence_bruteforce(cache, s, SeriesFamily::OEvenMinus)?;
            Ok(((plus.space_dimension + minus.space_dimension) as i64, 4 * n - 2 * delta + 2))
        }
        UnipotentGroup::OEven => {
            require_orth(s).map_err(|_| undetermined())?;
            let a = first_occurrence_bruteforce(cache, s, SeriesFamily::Sp)?;
            let b = first_occurrence_bruteforce(cache, &s.transpose(), SeriesFamily::Sp)?;
            Ok(((a.space_dimension + b.space_dimension) as i64, 4 * n - 2 * delta))
        }
        UnipotentGroup::U => {
            let lambda = partition_from_symbol(s).ok_or_else(undetermined)?;
            let even = first_occurrence_unitary(cache, &lambda, Parity::Even)?;
            let odd = first_occurrence_unitary(cache, &lambda, Parity::Odd)?;
            let size = lambda.size() as i64;
            Ok(((even.space_dimension + odd.space_dimension) as i64, 2 * size - 2 * delta + 1))
        }
    }
}
