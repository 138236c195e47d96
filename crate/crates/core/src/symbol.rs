//! Lusztig symbols.
//!
//! A symbol is an ordered pair of β-sets, taken up to the shift
//! `(A | B) ~ (A+1 ∪ {0} | B+1 ∪ {0})`. Every statistic here (rank, defect,
//! δ, Υ) is constant on shift classes; equality of classes is decided on the
//! minimal representative returned by [`Symbol::normalize`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_error, Error, Result};
use crate::partition::{beta_set_of, bipartitions_of, parse_list, partition_of_beta, BetaSet, Bipartition, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn both() -> [Sign; 2] {
        [Sign::Plus, Sign::Minus]
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "+1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(parse_error("sign", other, "expected + or -")),
        }
    }
}

/// `(A | B)`: `top` is the first row, `bottom` the second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Symbol {
    top: BetaSet,
    bottom: BetaSet,
}

impl Symbol {
    pub fn new(top: BetaSet, bottom: BetaSet) -> Self {
        Symbol { top, bottom }
    }

    /// Convenience constructor from two rows in any order. Panics on repeated entries.
    pub fn from_rows(top: &[u32], bottom: &[u32]) -> Self {
        Symbol {
            top: BetaSet::new(top.to_vec()).expect("top row has repeated entries"),
            bottom: BetaSet::new(bottom.to_vec()).expect("bottom row has repeated entries"),
        }
    }

    pub fn top(&self) -> &BetaSet {
        &self.top
    }

    pub fn bottom(&self) -> &BetaSet {
        &self.bottom
    }

    /// The minimal representative: strips a common 0 (shifting down) until one row lacks 0.
    pub fn normalize(&self) -> Symbol {
        let mut s = self.clone();
        while s.top.contains(0) && s.bottom.contains(0) {
            s.top = s.top.shifted_down();
            s.bottom = s.bottom.shifted_down();
        }
        s
    }

    pub fn is_normalized(&self) -> bool {
        !(self.top.contains(0) && self.bottom.contains(0))
    }

    /// One forward shift of the equivalence.
    pub fn shifted_up(&self) -> Symbol {
        Symbol { top: self.top.shifted_up(), bottom: self.bottom.shifted_up() }
    }

    pub fn equivalent(&self, other: &Symbol) -> bool {
        self.normalize() == other.normalize()
    }

    pub fn rank(&self) -> u32 {
        let m = (self.top.len() + self.bottom.len()) as i64;
        let total = (self.top.sum() + self.bottom.sum()) as i64;
        let rank = total - (m - 1) * (m - 1) / 4;
        debug_assert!(rank >= 0);
        rank as u32
    }

    pub fn defect(&self) -> i32 {
        self.top.len() as i32 - self.bottom.len() as i32
    }

    pub fn delta(&self) -> u32 {
        self.top.delta() + self.bottom.delta()
    }

    pub fn upsilon(&self) -> Bipartition {
        Bipartition::new(partition_of_beta(&self.top), partition_of_beta(&self.bottom))
    }

    pub fn transpose(&self) -> Symbol {
        Symbol { top: self.bottom.clone(), bottom: self.top.clone() }
    }

    pub fn is_cuspidal(&self) -> bool {
        self.rank() == defect_floor(self.defect())
    }

    /// The unique normalized symbol with the given `Υ` and defect.
    pub fn with_upsilon(upsilon: &Bipartition, defect: i32) -> Symbol {
        let lower_rows = upsilon
            .lower
            .len()
            .max((upsilon.upper.len() as i64 - defect as i64).max(0) as usize)
            .max((-(defect as i64)).max(0) as usize);
        let upper_rows = (lower_rows as i64 + defect as i64) as usize;
        Symbol {
            top: beta_set_of(&upsilon.upper, upper_rows).expect("enough rows"),
            bottom: beta_set_of(&upsilon.lower, lower_rows).expect("enough rows"),
        }
        .normalize()
    }
}

/// `⌊(d/2)²⌋`, the least rank a symbol of defect `d` can have.
pub fn defect_floor(defect: i32) -> u32 {
    (defect as i64 * defect as i64 / 4) as u32
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.top, self.bottom)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (top, bottom) = s.split_once('|').ok_or_else(|| parse_error("symbol", s, "expected `a,b,...|c,d,...`"))?;
        let row = |r: &str| -> Result<BetaSet> {
            BetaSet::new(parse_list("symbol", r)?).map_err(|_| parse_error("symbol", s, "repeated entry in a row"))
        };
        Ok(Symbol::new(row(top)?, row(bottom)?))
    }
}

impl From<Symbol> for String {
    fn from(s: Symbol) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for Symbol {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeriesFamily {
    #[serde(rename = "sp")]
    Sp,
    #[serde(rename = "o+")]
    OEvenPlus,
    #[serde(rename = "o-")]
    OEvenMinus,
    #[serde(rename = "u")]
    U,
}

impl SeriesFamily {
    /// The even orthogonal family of a given Witt sign.
    pub fn orthogonal(sign: Sign) -> SeriesFamily {
        match sign {
            Sign::Plus => SeriesFamily::OEvenPlus,
            Sign::Minus => SeriesFamily::OEvenMinus,
        }
    }

    /// Defect residue mod 4, for the three defect-governed families.
    pub fn defect_residue(self) -> Option<i32> {
        match self {
            SeriesFamily::Sp => Some(1),
            SeriesFamily::OEvenPlus => Some(0),
            SeriesFamily::OEvenMinus => Some(2),
            SeriesFamily::U => None,
        }
    }

    /// The defect-governed family containing symbols of this defect, if any.
    pub fn of_defect(defect: i32) -> Option<SeriesFamily> {
        match defect.rem_euclid(4) {
            0 => Some(SeriesFamily::OEvenPlus),
            1 => Some(SeriesFamily::Sp),
            2 => Some(SeriesFamily::OEvenMinus),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesFamily::Sp => "sp",
            SeriesFamily::OEvenPlus => "o+",
            SeriesFamily::OEvenMinus => "o-",
            SeriesFamily::U => "u",
        }
    }
}

impl fmt::Display for SeriesFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sp" => Ok(SeriesFamily::Sp),
            "o+" | "oplus" => Ok(SeriesFamily::OEvenPlus),
            "o-" | "ominus" => Ok(SeriesFamily::OEvenMinus),
            "u" => Ok(SeriesFamily::U),
            other => Err(parse_error("group", other, "expected sp, o+, o- or u")),
        }
    }
}

/// Witt sign of an even orthogonal symbol, read off its defect.
pub fn orthogonal_sign(s: &Symbol) -> Option<Sign> {
    match SeriesFamily::of_defect(s.defect())? {
        SeriesFamily::OEvenPlus => Some(Sign::Plus),
        SeriesFamily::OEvenMinus => Some(Sign::Minus),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SeriesTag {
    pub family: SeriesFamily,
    pub rank: u32,
}

impl SeriesTag {
    pub fn new(family: SeriesFamily, rank: u32) -> Self {
        SeriesTag { family, rank }
    }
}

impl fmt::Display for SeriesTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.rank)
    }
}

pub fn series_contains(tag: SeriesTag, s: &Symbol) -> Result<bool> {
    let residue = tag.family.defect_residue().ok_or(Error::UnsupportedFamily("u"))?;
    Ok(s.rank() == tag.rank && s.defect().rem_euclid(4) == residue)
}

/// Every symbol class of the series once, normalized, sorted by defect then rows.
pub fn enumerate_series(tag: SeriesTag) -> Result<Vec<Symbol>> {
    let residue = tag.family.defect_residue().ok_or(Error::UnsupportedFamily("u"))?;
    let mut out = Vec::new();
    // |d| grows until ⌊(d/2)²⌋ exceeds the rank
    let mut bound = 0i32;
    while defect_floor(bound + 1) <= tag.rank {
        bound += 1;
    }
    for defect in -bound..=bound {
        if defect.rem_euclid(4) != residue {
            continue;
        }
        let floor = defect_floor(defect);
        if floor > tag.rank {
            continue;
        }
        for bip in bipartitions_of(tag.rank - floor) {
            out.push(Symbol::with_upsilon(&bip, defect));
        }
    }
    sort_symbols(&mut out);
    Ok(out)
}

/// Every symbol class of rank `n`, all defects, sorted by defect then rows.
pub fn symbols_of_rank(n: u32) -> Vec<Symbol> {
    let mut out = Vec::new();
    let mut d = 0i32;
    while defect_floor(d) <= n {
        for defect in if d == 0 { vec![0] } else { vec![-d, d] } {
            for bip in bipartitions_of(n - defect_floor(defect)) {
                out.push(Symbol::with_upsilon(&bip, defect));
            }
        }
        d += 1;
    }
    sort_symbols(&mut out);
    out
}

pub(crate) fn sort_symbols(symbols: &mut [Symbol]) {
    symbols.sort_by(|a, b| (a.defect(), a.top(), a.bottom()).cmp(&(b.defect(), b.top(), b.bottom())));
}

/// The unitary symbol `Λ_λ`: split a β-set of `λ` with an even number of
/// slots into its odd and even members.
pub fn symbol_from_partition(lambda: &Partition) -> Symbol {
    let slots = lambda.len() + lambda.len() % 2;
    let beta = beta_set_of(lambda, slots).expect("enough slots");
    let top = beta.elements().iter().filter(|&&x| x % 2 == 1).map(|&x| (x - 1) / 2).collect();
    let bottom = beta.elements().iter().filter(|&&x| x % 2 == 0).map(|&x| x / 2).collect();
    Symbol::new(BetaSet::from_decreasing(top), BetaSet::from_decreasing(bottom)).normalize()
}

/// Inverse of [`symbol_from_partition`]; `None` when the symbol is not of the form `Λ_λ`.
pub fn partition_from_symbol(s: &Symbol) -> Option<Partition> {
    if !(s.top().len() + s.bottom().len()).is_multiple_of(2) {
        return None;
    }
    let merged =
        s.top().elements().iter().map(|&a| 2 * a + 1).chain(s.bottom().elements().iter().map(|&b| 2 * b)).collect();
    Some(partition_of_beta(&BetaSet::new(merged).expect("odd and even members are distinct")))
}

/// Defect of `Λ_λ` for a partition whose 2-core is the staircase of index `d`.
pub fn unitary_defect_of_core(d: u32) -> i32 {
    if d.is_multiple_of(2) {
        d as i32
    } else {
        -(d as i32) - 1
    }
}

/// Staircase index of the 2-core shared by every `Λ_λ` of this defect.
pub fn unitary_core_of_defect(defect: i32) -> Option<u32> {
    match (defect.rem_euclid(2), defect >= 0) {
        (0, true) => Some(defect as u32),
        (0, false) => Some((-defect - 1) as u32),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtremalClass {
    /// Defects 0 and ±1, where δ can reach the rank.
    #[serde(rename = "0/±1")]
    Small,
    /// Defect ±2, where δ can reach rank − 1.
    #[serde(rename = "±2")]
    Two,
}

/// The symbols of rank `n` and the given defect class on which δ is maximal.
pub fn extremal_delta_symbols(n: u32, class: ExtremalClass) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    match class {
        ExtremalClass::Small => {
            for k in 0..=n {
                out.push(Symbol::from_rows(&[k], &[n - k + 1, 0]));
                out.push(Symbol::from_rows(&[n - k], &[k]));
                out.push(Symbol::from_rows(&[n - k + 1, 0], &[k]));
            }
        }
        ExtremalClass::Two => {
            if n == 0 {
                return Err(Error::InvalidClass);
            }
            for k in 0..n {
                out.push(Symbol::from_rows(&[k], &[n - k + 1, 1, 0]));
                out.push(Symbol::from_rows(&[n - k + 1, 1, 0], &[k]));
            }
        }
    }
    let mut out: Vec<Symbol> = out.iter().map(Symbol::normalize).collect();
    sort_symbols(&mut out);
    out.dedup();
    Ok(out)
}
