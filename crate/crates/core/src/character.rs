//! Irreducible characters modelled through their block decomposition.
//!
//! A character is recorded as the total dimension of the blocks where the
//! semisimple part has eigenvalues other than ±1 (kept only as labelled
//! dimensions), plus one or two unipotent symbols for the ±1 parts. Every
//! first-occurrence and preservation statement is evaluated on that data.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{parse_error, Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::symbol::{orthogonal_sign, symbol_from_partition, SeriesFamily, SeriesTag, Sign, Symbol};
use crate::theta::{
    in_b_sp_oeven, in_b_uu, theta_zero, theta_zero_orth, theta_zero_sp, theta_zero_unitary, Parity, SeriesCache,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharFamily {
    Unitary { n: u32 },
    Sp { n: u32 },
    OEven { n: u32, eps: Sign },
    OOdd { n: u32 },
}

impl CharFamily {
    pub fn n(self) -> u32 {
        match self {
            CharFamily::Unitary { n } | CharFamily::Sp { n } | CharFamily::OEven { n, .. } | CharFamily::OOdd { n } => {
                n
            }
        }
    }

    /// Dimension of the underlying space.
    pub fn dim(self) -> u32 {
        match self {
            CharFamily::Unitary { n } => n,
            CharFamily::Sp { n } | CharFamily::OEven { n, .. } => 2 * n,
            CharFamily::OOdd { n } => 2 * n + 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CharFamily::Unitary { .. } => "u",
            CharFamily::Sp { .. } => "sp",
            CharFamily::OEven { eps: Sign::Plus, .. } => "o+",
            CharFamily::OEven { eps: Sign::Minus, .. } => "o-",
            CharFamily::OOdd { .. } => "oodd",
        }
    }

    pub fn from_name(name: &str, n: u32) -> Result<CharFamily> {
        match name.trim().to_ascii_lowercase().as_str() {
            "u" => Ok(CharFamily::Unitary { n }),
            "sp" => Ok(CharFamily::Sp { n }),
            "o+" => Ok(CharFamily::OEven { n, eps: Sign::Plus }),
            "o-" => Ok(CharFamily::OEven { n, eps: Sign::Minus }),
            "oodd" | "o-odd" => Ok(CharFamily::OOdd { n }),
            other => Err(parse_error("family", other, "expected u, sp, o+, o- or oodd")),
        }
    }
}

impl fmt::Display for CharFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.n())
    }
}

/// A block of the semisimple part with eigenvalues other than ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub label: String,
    pub dim: u32,
}

impl Block {
    pub fn new(label: impl Into<String>, dim: u32) -> Self {
        Block { label: label.into(), dim }
    }

    pub fn anonymous(dim: u32) -> Self {
        Block::new("", dim)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BlockRepr {
    Dim(u32),
    Labelled { label: String, dim: u32 },
}

impl Serialize for Block {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.label.is_empty() {
            BlockRepr::Dim(self.dim).serialize(s)
        } else {
            BlockRepr::Labelled { label: self.label.clone(), dim: self.dim }.serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Block {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match BlockRepr::deserialize(d)? {
            BlockRepr::Dim(dim) => Block::anonymous(dim),
            BlockRepr::Labelled { label, dim } => Block { label, dim },
        })
    }
}

/// The unipotent data of the ±1 parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Components {
    Unitary {
        lambda: Partition,
    },
    /// `lambda1` in an even orthogonal series, `lambda2` symplectic.
    Sp {
        lambda1: Symbol,
        lambda2: Symbol,
    },
    /// Both even orthogonal; the group's sign is the product of their signs.
    OEven {
        lambda1: Symbol,
        lambda2: Symbol,
    },
    /// Both symplectic, with the sign of the series the character lies in.
    OOdd {
        lambda1: Symbol,
        lambda2: Symbol,
        sign: Sign,
    },
}

/// Raw first component handed to [`make_character`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unipotent {
    Partition(Partition),
    Symbol(Symbol),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "CharacterLiteral", try_from = "CharacterLiteral")]
pub struct GeneralCharacter {
    family: CharFamily,
    blocks: Vec<Block>,
    components: Components,
}

/// Which Witt series of targets a symplectic character is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpTargets {
    /// Even orthogonal targets `O^±_2n'`.
    Even,
    /// Odd orthogonal targets `O_2n'+1`, paired with the `c` twist.
    Odd,
}

fn series_error(what: &str, s: &Symbol, wanted: &str) -> Error {
    Error::WrongSeries(format!("{what} = {s} has defect {}, needs {wanted}", s.defect()))
}

fn check_sp(what: &str, s: &Symbol) -> Result<()> {
    if s.defect().rem_euclid(4) == 1 {
        Ok(())
    } else {
        Err(series_error(what, s, "1 mod 4"))
    }
}

fn check_orth(what: &str, s: &Symbol) -> Result<Sign> {
    orthogonal_sign(s).ok_or_else(|| series_error(what, s, "0 or 2 mod 4"))
}

/// Validates and builds a character; symbols are stored normalized and blocks sorted.
pub fn make_character(
    family: CharFamily,
    blocks: Vec<Block>,
    lambda1: Unipotent,
    lambda2: Option<Symbol>,
    sign: Option<Sign>,
) -> Result<GeneralCharacter> {
    let unitary = matches!(family, CharFamily::Unitary { .. });
    for b in &blocks {
        if b.dim == 0 || (!unitary && b.dim % 2 == 1) {
            return Err(Error::WrongSeries(format!("block {:?} of dimension {} is not allowed here", b.label, b.dim)));
        }
    }
    let d0: u32 = blocks.iter().map(|b| b.dim).sum();
    if sign.is_some() && !matches!(family, CharFamily::OOdd { .. }) {
        return Err(Error::SpuriousField("sign"));
    }
    let components = match family {
        CharFamily::Unitary { .. } => {
            if lambda2.is_some() {
                return Err(Error::SpuriousField("lambda2"));
            }
            let Unipotent::Partition(lambda) = lambda1 else {
                return Err(Error::WrongSeries("unitary lambda1 must be a partition".into()));
            };
            Components::Unitary { lambda }
        }
        _ => {
            let Unipotent::Symbol(lambda1) = lambda1 else {
                return Err(Error::WrongSeries("lambda1 must be a symbol".into()));
            };
            let lambda1 = lambda1.normalize();
            let lambda2 = lambda2.ok_or(Error::WrongSeries("lambda2 is required".into()))?.normalize();
            match family {
                CharFamily::Sp { .. } => {
                    check_orth("lambda1", &lambda1)?;
                    check_sp("lambda2", &lambda2)?;
                    Components::Sp { lambda1, lambda2 }
                }
                CharFamily::OEven { eps, .. } => {
                    let e1 = check_orth("lambda1", &lambda1)?;
                    let e2 = check_orth("lambda2", &lambda2)?;
                    if e1 * e2 != eps {
                        return Err(Error::WrongSeries(format!(
                            "series signs {e1}{e2} do not multiply to the group sign {eps}"
                        )));
                    }
                    Components::OEven { lambda1, lambda2 }
                }
                CharFamily::OOdd { .. } => {
                    check_sp("lambda1", &lambda1)?;
                    check_sp("lambda2", &lambda2)?;
                    let sign = sign.ok_or(Error::MissingSignBit)?;
                    Components::OOdd { lambda1, lambda2, sign }
                }
                CharFamily::Unitary { .. } => unreachable!(),
            }
        }
    };
    let mut rho = GeneralCharacter { family, blocks, components };
    rho.blocks.sort();
    let (expected, actual) = match &rho.components {
        Components::Unitary { lambda } => (family.n(), d0 + lambda.size()),
        Components::Sp { lambda1, lambda2 }
        | Components::OEven { lambda1, lambda2 }
        | Components::OOdd { lambda1, lambda2, .. } => (2 * family.n(), d0 + 2 * lambda1.rank() + 2 * lambda2.rank()),
    };
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(rho)
}

impl GeneralCharacter {
    pub fn family(&self) -> CharFamily {
        self.family
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn d0(&self) -> u32 {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    pub fn components(&self) -> &Components {
        &self.components
    }

    /// The two unipotent symbols, when the family has them.
    pub fn symbols(&self) -> Option<(&Symbol, &Symbol)> {
        match &self.components {
            Components::Unitary { .. } => None,
            Components::Sp { lambda1, lambda2 }
            | Components::OEven { lambda1, lambda2 }
            | Components::OOdd { lambda1, lambda2, .. } => Some((lambda1, lambda2)),
        }
    }

    /// `d0 = 0` and every unipotent component cuspidal.
    pub fn is_cuspidal(&self) -> bool {
        self.d0() == 0
            && match &self.components {
                Components::Unitary { lambda } => symbol_from_partition(lambda).is_cuspidal(),
                _ => {
                    let (a, b) = self.symbols().expect("two components");
                    a.is_cuspidal() && b.is_cuspidal()
                }
            }
    }

    /// `d0 = 0` and the eigenvalue 1 part trivial (symplectic and odd orthogonal only).
    pub fn is_pseudo_unipotent(&self) -> bool {
        self.d0() == 0
            && matches!(&self.components,
                Components::Sp { lambda2, .. } | Components::OOdd { lambda2, .. } if *lambda2 == trivial_sp())
    }

    /// `d0 = 0` and the component carrying the eigenvalue 1 part is the only nontrivial one.
    pub fn is_unipotent(&self) -> bool {
        self.d0() == 0
            && match &self.components {
                Components::Unitary { .. } => true,
                Components::Sp { lambda1, .. } | Components::OEven { lambda1, .. } => *lambda1 == Symbol::default(),
                Components::OOdd { lambda1, .. } => *lambda1 == trivial_sp(),
            }
    }
}

fn trivial_sp() -> Symbol {
    Symbol::from_rows(&[0], &[])
}

/// The serialized form: `{"family": "sp", "n": 3, "d0_blocks": [2], "lambda1": "1|0", "lambda2": "1,0|1", "sign": null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterLiteral {
    pub family: String,
    pub n: u32,
    #[serde(default)]
    pub d0_blocks: Vec<Block>,
    pub lambda1: String,
    #[serde(default)]
    pub lambda2: Option<String>,
    #[serde(default)]
    pub sign: Option<Sign>,
}

impl From<GeneralCharacter> for CharacterLiteral {
    fn from(rho: GeneralCharacter) -> Self {
        let (lambda1, lambda2, sign) = match &rho.components {
            Components::Unitary { lambda } => (lambda.to_string(), None, None),
            Components::Sp { lambda1, lambda2 } | Components::OEven { lambda1, lambda2 } => {
                (lambda1.to_string(), Some(lambda2.to_string()), None)
            }
            Components::OOdd { lambda1, lambda2, sign } => {
                (lambda1.to_string(), Some(lambda2.to_string()), Some(*sign))
            }
        };
        CharacterLiteral {
            family: rho.family.name().to_string(),
            n: rho.family.n(),
            d0_blocks: rho.blocks,
            lambda1,
            lambda2,
            sign,
        }
    }
}

impl TryFrom<CharacterLiteral> for GeneralCharacter {
    type Error = Error;

    fn try_from(lit: CharacterLiteral) -> Result<Self> {
        let family = CharFamily::from_name(&lit.family, lit.n)?;
        let lambda1 = match family {
            CharFamily::Unitary { .. } => Unipotent::Partition(lit.lambda1.parse()?),
            _ => Unipotent::Symbol(lit.lambda1.parse()?),
        };
        let lambda2 = lit.lambda2.as_deref().map(str::parse).transpose()?;
        make_character(family, lit.d0_blocks, lambda1, lambda2, lit.sign)
    }
}

impl fmt::Display for GeneralCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self
            .blocks
            .iter()
            .map(|b| if b.label.is_empty() { b.dim.to_string() } else { format!("{}:{}", b.label, b.dim) })
            .collect();
        write!(f, "{}[{}]", self.family, dims.join(","))?;
        match &self.components {
            Components::Unitary { lambda } => write!(f, " ({lambda})"),
            Components::Sp { lambda1, lambda2 } | Components::OEven { lambda1, lambda2 } => {
                write!(f, " ({lambda1}) ({lambda2})")
            }
            Components::OOdd { lambda1, lambda2, sign } => write!(f, " ({lambda1}) ({lambda2}) {sign}"),
        }
    }
}

pub fn char_dim(rho: &GeneralCharacter) -> u32 {
    rho.family.dim()
}

/// `δ(ρ)`: the δ of the component that the relevant target series moves.
/// `targets` only matters for symplectic characters.
pub fn delta_char(rho: &GeneralCharacter, targets: SpTargets) -> u32 {
    match &rho.components {
        Components::Unitary { lambda } => symbol_from_partition(lambda).delta(),
        Components::Sp { lambda1, lambda2 } => match targets {
            SpTargets::Even => lambda2.delta(),
            SpTargets::Odd => lambda1.delta(),
        },
        Components::OEven { lambda2, .. } | Components::OOdd { lambda2, .. } => lambda2.delta(),
    }
}

pub fn sgn_twist(rho: &GeneralCharacter) -> Result<GeneralCharacter> {
    let components = match &rho.components {
        Components::OEven { lambda1, lambda2 } => {
            Components::OEven { lambda1: lambda1.transpose().normalize(), lambda2: lambda2.transpose().normalize() }
        }
        Components::OOdd { lambda1, lambda2, sign } => {
            Components::OOdd { lambda1: lambda1.clone(), lambda2: lambda2.clone(), sign: sign.flip() }
        }
        _ => return Err(Error::WrongFamily { expected: "orthogonal" }),
    };
    Ok(GeneralCharacter { components, ..rho.clone() })
}

pub fn c_twist(rho: &GeneralCharacter) -> Result<GeneralCharacter> {
    match &rho.components {
        Components::Sp { lambda1, lambda2 } => Ok(GeneralCharacter {
            components: Components::Sp { lambda1: lambda1.transpose().normalize(), lambda2: lambda2.clone() },
            ..rho.clone()
        }),
        _ => Err(Error::WrongFamily { expected: "symplectic" }),
    }
}

fn series_sign(s: &Symbol) -> Sign {
    orthogonal_sign(s).expect("validated even orthogonal symbol")
}

/// Whether `rho` and `rho_prime` correspond under theta for their pair of groups.
pub fn corresponds(rho: &GeneralCharacter, rho_prime: &GeneralCharacter) -> Result<bool> {
    use Components as C;
    if let (C::Sp { .. }, C::OEven { .. } | C::OOdd { .. }) = (&rho.components, &rho_prime.components) {
        return corresponds_sp(rho, rho_prime);
    }
    if let (C::OEven { .. } | C::OOdd { .. }, C::Sp { .. }) = (&rho.components, &rho_prime.components) {
        return corresponds_sp(rho_prime, rho);
    }
    match (&rho.components, &rho_prime.components) {
        (C::Unitary { lambda }, C::Unitary { lambda: mu }) => {
            Ok(rho.blocks == rho_prime.blocks && in_b_uu(&symbol_from_partition(lambda), &symbol_from_partition(mu)))
        }
        _ => Err(Error::UnsupportedPair),
    }
}

fn corresponds_sp(sp: &GeneralCharacter, orth: &GeneralCharacter) -> Result<bool> {
    let Components::Sp { lambda1, lambda2 } = &sp.components else { unreachable!() };
    if sp.blocks != orth.blocks {
        return Ok(false);
    }
    match &orth.components {
        Components::OEven { lambda1: mu1, lambda2: mu2 } => {
            Ok(lambda1 == mu1 && in_b_sp_oeven(lambda2, mu2, series_sign(mu2))?)
        }
        Components::OOdd { lambda1: mu1, lambda2: mu2, sign } => {
            let e1 = series_sign(lambda1);
            Ok(lambda2 == mu1 && *sign == e1 && in_b_sp_oeven(mu2, lambda1, e1)?)
        }
        _ => unreachable!(),
    }
}

/// Target Witt series for a first-occurrence query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "u-even")]
    UEven,
    #[serde(rename = "u-odd")]
    UOdd,
    #[serde(rename = "sp")]
    Sp,
    #[serde(rename = "o+")]
    OEvenPlus,
    #[serde(rename = "o-")]
    OEvenMinus,
    #[serde(rename = "oodd")]
    OOdd,
    /// Odd orthogonal targets for the `c` twist of the character.
    #[serde(rename = "oodd-c")]
    OOddC,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::UEven => "u-even",
            Target::UOdd => "u-odd",
            Target::Sp => "sp",
            Target::OEvenPlus => "o+",
            Target::OEvenMinus => "o-",
            Target::OOdd => "oodd",
            Target::OOddC => "oodd-c",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "u-even" | "even" => Ok(Target::UEven),
            "u-odd" | "odd" => Ok(Target::UOdd),
            "sp" => Ok(Target::Sp),
            "o+" => Ok(Target::OEvenPlus),
            "o-" => Ok(Target::OEvenMinus),
            "oodd" | "o-odd" => Ok(Target::OOdd),
            "oodd-c" | "o-odd-c" => Ok(Target::OOddC),
            other => Err(parse_error("target", other, "expected u-even, u-odd, sp, o+, o-, oodd or oodd-c")),
        }
    }
}

/// Closed-form first occurrence: the dimension of the smallest space in the
/// target series whose group receives `rho`.
pub fn first_occurrence_general(rho: &GeneralCharacter, target: Target) -> Result<u32> {
    let d0 = rho.d0();
    match (&rho.components, target) {
        (Components::Unitary { lambda }, Target::UEven | Target::UOdd) => {
            let parity = if target == Target::UEven { Parity::Even } else { Parity::Odd };
            // |λ'| must have the parity of n' - d0
            let inner = if d0.is_multiple_of(2) { parity } else { parity.flip() };
            Ok(d0 + theta_zero_unitary(lambda, inner).size())
        }
        (Components::Sp { lambda1, lambda2 }, Target::OEvenPlus | Target::OEvenMinus) => {
            let eps = if target == Target::OEvenPlus { Sign::Plus } else { Sign::Minus };
            let partner = theta_zero_sp(lambda2, eps * series_sign(lambda1))?;
            Ok(d0 + 2 * lambda1.rank() + 2 * partner.rank())
        }
        (Components::Sp { lambda1, lambda2 }, Target::OOdd) => {
            Ok(d0 + 2 * lambda2.rank() + 2 * theta_zero_orth(lambda1)?.rank() + 1)
        }
        (Components::Sp { .. }, Target::OOddC) => first_occurrence_general(&c_twist(rho)?, Target::OOdd),
        (Components::OEven { lambda1, lambda2 }, Target::Sp) => {
            Ok(d0 + 2 * lambda1.rank() + 2 * theta_zero_orth(lambda2)?.rank())
        }
        (Components::OOdd { lambda1, lambda2, sign }, Target::Sp) => {
            Ok(d0 + 2 * lambda1.rank() + 2 * theta_zero(lambda2, *sign).rank())
        }
        _ => Err(Error::UnsupportedTarget),
    }
}

/// Every valid character of `family` whose block list is exactly `blocks`,
/// in a fixed order (components in series enumeration order).
pub fn characters_with_blocks(cache: &SeriesCache, family: CharFamily, blocks: &[Block]) -> Vec<GeneralCharacter> {
    let d0: u32 = blocks.iter().map(|b| b.dim).sum();
    let mut out = Vec::new();
    let build = |l1: Unipotent, l2: Option<Symbol>, sign: Option<Sign>| {
        make_character(family, blocks.to_vec(), l1, l2, sign).ok()
    };
    let series = |f: SeriesFamily, r: u32| -> Vec<Symbol> {
        cache.all(SeriesTag::new(f, r)).into_iter().map(|c| c.symbol).collect()
    };
    if let CharFamily::Unitary { n } = family {
        if n >= d0 {
            out.extend(partitions_of(n - d0).into_iter().filter_map(|p| build(Unipotent::Partition(p), None, None)));
        }
        return out;
    }
    if 2 * family.n() < d0 || d0 % 2 == 1 {
        return out;
    }
    let total = family.n() - d0 / 2;
    for r1 in 0..=total {
        let r2 = total - r1;
        let pairs: Vec<(SeriesFamily, SeriesFamily)> = match family {
            CharFamily::Sp { .. } => {
                vec![(SeriesFamily::OEvenPlus, SeriesFamily::Sp), (SeriesFamily::OEvenMinus, SeriesFamily::Sp)]
            }
            CharFamily::OEven { eps, .. } => Sign::both()
                .into_iter()
                .map(|e1| (SeriesFamily::orthogonal(e1), SeriesFamily::orthogonal(e1 * eps)))
                .collect(),
            CharFamily::OOdd { .. } => vec![(SeriesFamily::Sp, SeriesFamily::Sp)],
            CharFamily::Unitary { .. } => unreachable!(),
        };
        for (f1, f2) in pairs {
            let first = series(f1, r1);
            let second = series(f2, r2);
            for a in &first {
                for b in &second {
                    let signs: &[Option<Sign>] = if matches!(family, CharFamily::OOdd { .. }) {
                        &[Some(Sign::Plus), Some(Sign::Minus)]
                    } else {
                        &[None]
                    };
                    for &sign in signs {
                        out.extend(build(Unipotent::Symbol(a.clone()), Some(b.clone()), sign));
                    }
                }
            }
        }
    }
    out
}

/// Distinct sub-multisets of a sorted block list, smallest total first.
fn sub_multisets(blocks: &[Block]) -> Vec<Vec<Block>> {
    let mut out: Vec<Vec<Block>> = (0u32..1 << blocks.len())
        .map(|mask| blocks.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, b)| b.clone()).collect())
        .collect();
    out.sort_by_key(|v: &Vec<Block>| (v.iter().map(|b| b.dim).sum::<u32>(), v.clone()));
    out.dedup();
    out
}

/// Target group families of increasing dimension for a query.
fn target_families(rho: &GeneralCharacter, target: Target, n_prime: u32) -> Result<Option<CharFamily>> {
    Ok(match (rho.family, target) {
        (CharFamily::Unitary { .. }, Target::UEven) => {
            n_prime.is_multiple_of(2).then_some(CharFamily::Unitary { n: n_prime })
        }
        (CharFamily::Unitary { .. }, Target::UOdd) => (n_prime % 2 == 1).then_some(CharFamily::Unitary { n: n_prime }),
        (CharFamily::Sp { .. }, Target::OEvenPlus) => Some(CharFamily::OEven { n: n_prime, eps: Sign::Plus }),
        (CharFamily::Sp { .. }, Target::OEvenMinus) => Some(CharFamily::OEven { n: n_prime, eps: Sign::Minus }),
        (CharFamily::Sp { .. }, Target::OOdd) => Some(CharFamily::OOdd { n: n_prime }),
        (CharFamily::OEven { .. } | CharFamily::OOdd { .. }, Target::Sp) => Some(CharFamily::Sp { n: n_prime }),
        _ => return Err(Error::UnsupportedTarget),
    })
}

/// First occurrence found by scanning: enumerate target characters by
/// increasing dimension (block configurations drawn from `rho`'s blocks) and
/// test [`corresponds`]. Returns the dimension and the first partner.
pub fn first_occurrence_scan(
    cache: &SeriesCache,
    rho: &GeneralCharacter,
    target: Target,
) -> Result<(u32, GeneralCharacter)> {
    if target == Target::OOddC {
        return first_occurrence_scan(cache, &c_twist(rho)?, Target::OOdd);
    }
    let configs = sub_multisets(&rho.blocks);
    let cap = 2 * char_dim(rho) + 3;
    for n_prime in 0.. {
        let Some(family) = target_families(rho, target, n_prime)? else {
            continue;
        };
        if family.dim() > cap {
            break;
        }
        for blocks in &configs {
            for candidate in characters_with_blocks(cache, family, blocks) {
                if corresponds(rho, &candidate)? {
                    return Ok((family.dim(), candidate));
                }
            }
        }
    }
    Err(Error::CapExceeded { cap })
}

/// Paired first occurrences and the closed form they must sum to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationSum {
    pub first: u32,
    pub second: u32,
    pub lhs: i64,
    pub rhs: i64,
}

/// The generalized preservation identity for `rho`. For symplectic
/// characters `targets` chooses between the even orthogonal pair (`ε = ±`)
/// and the odd orthogonal pair (`ρ`, `ρ^c`).
pub fn preservation_sum_general(rho: &GeneralCharacter, targets: SpTargets) -> Result<PreservationSum> {
    let dim = char_dim(rho) as i64;
    let delta = delta_char(rho, targets) as i64;
    let (first, second, rhs) = match rho.family {
        CharFamily::Unitary { .. } => (
            first_occurrence_general(rho, Target::UEven)?,
            first_occurrence_general(rho, Target::UOdd)?,
            2 * dim - 2 * delta + 1,
        ),
        CharFamily::OEven { .. } | CharFamily::OOdd { .. } => (
            first_occurrence_general(rho, Target::Sp)?,
            first_occurrence_general(&sgn_twist(rho)?, Target::Sp)?,
            2 * dim - 2 * delta,
        ),
        CharFamily::Sp { .. } => {
            let (a, b) = match targets {
                SpTargets::Even => (Target::OEvenPlus, Target::OEvenMinus),
                SpTargets::Odd => (Target::OOdd, Target::OOddC),
            };
            (first_occurrence_general(rho, a)?, first_occurrence_general(rho, b)?, 2 * dim - 2 * delta + 2)
        }
    };
    Ok(PreservationSum { first, second, lhs: first as i64 + second as i64, rhs })
}

/// First occurrences of `ρ` and `ρ^c` against odd orthogonal targets.
pub fn odd_witt_split(rho: &GeneralCharacter) -> Result<(u32, u32)> {
    if !matches!(rho.family, CharFamily::Sp { .. }) {
        return Err(Error::WrongFamily { expected: "symplectic" });
    }
    Ok((first_occurrence_general(rho, Target::OOdd)?, first_occurrence_general(rho, Target::OOddC)?))
}

/// Every character of the family, with blocks ranging over all multisets of
/// anonymous admissible dimensions.
pub fn all_characters(cache: &SeriesCache, family: CharFamily) -> Vec<GeneralCharacter> {
    let unitary = matches!(family, CharFamily::Unitary { .. });
    let (budget, scale) = if unitary { (family.n(), 1) } else { (family.n(), 2) };
    let mut out = Vec::new();
    for half in 0..=budget {
        for shape in partitions_of(half) {
            let blocks: Vec<Block> = shape.parts().iter().map(|&p| Block::anonymous(scale * p)).collect();
            out.extend(characters_with_blocks(cache, family, &blocks));
        }
    }
    out
}

/// Kinds of characters the random sampler draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Unitary,
    Sp,
    OEven,
    OOdd,
}

const BLOCK_LABELS: [&str; 3] = ["a", "b", "c"];

/// Draws a valid character of the given kind with `dim <= max_dim`: a rank
/// and block budget uniformly, a random block composition with labels from
/// a small pool, then components uniformly from the cached series.
pub fn random_character<R: Rng>(cache: &SeriesCache, rng: &mut R, kind: SampleKind, max_dim: u32) -> GeneralCharacter {
    loop {
        let family = match kind {
            SampleKind::Unitary => CharFamily::Unitary { n: rng.gen_range(0..=max_dim) },
            SampleKind::Sp => CharFamily::Sp { n: rng.gen_range(0..=max_dim / 2) },
            SampleKind::OEven => CharFamily::OEven {
                n: rng.gen_range(0..=max_dim / 2),
                eps: if rng.gen() { Sign::Plus } else { Sign::Minus },
            },
            SampleKind::OOdd => CharFamily::OOdd { n: rng.gen_range(0..=max_dim.saturating_sub(1) / 2) },
        };
        let unit = if kind == SampleKind::Unitary { 1 } else { 2 };
        let n = family.n();
        let mut budget = rng.gen_range(0..=n);
        let rest = n - budget;
        let mut blocks = Vec::new();
        while budget > 0 {
            let part = rng.gen_range(1..=budget);
            let label = *BLOCK_LABELS.choose(rng).expect("nonempty pool");
            blocks.push(Block::new(label, unit * part));
            budget -= part;
        }
        let pick = |f: SeriesFamily, r: u32, rng: &mut R| -> Option<Symbol> {
            cache.all(SeriesTag::new(f, r)).choose(rng).map(|c| c.symbol.clone())
        };
        let orth = |rng: &mut R| if rng.gen() { SeriesFamily::OEvenPlus } else { SeriesFamily::OEvenMinus };
        let r1 = rng.gen_range(0..=rest);
        let r2 = rest - r1;
        let built = match family {
            CharFamily::Unitary { .. } => {
                let lambda = partitions_of(rest).choose(rng).cloned().expect("partitions exist");
                make_character(family, blocks, Unipotent::Partition(lambda), None, None)
            }
            CharFamily::Sp { .. } => {
                let f1 = orth(rng);
                let (Some(a), Some(b)) = (pick(f1, r1, rng), pick(SeriesFamily::Sp, r2, rng)) else {
                    continue;
                };
                make_character(family, blocks, Unipotent::Symbol(a), Some(b), None)
            }
            CharFamily::OEven { eps, .. } => {
                let f1 = orth(rng);
                let e1 = if f1 == SeriesFamily::OEvenPlus { Sign::Plus } else { Sign::Minus };
                let f2 = SeriesFamily::orthogonal(e1 * eps);
                let (Some(a), Some(b)) = (pick(f1, r1, rng), pick(f2, r2, rng)) else {
                    continue;
                };
                make_character(family, blocks, Unipotent::Symbol(a), Some(b), None)
            }
            CharFamily::OOdd { .. } => {
                let (Some(a), Some(b)) = (pick(SeriesFamily::Sp, r1, rng), pick(SeriesFamily::Sp, r2, rng)) else {
                    continue;
                };
                let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
                make_character(family, blocks, Unipotent::Symbol(a), Some(b), Some(sign))
            }
        };
        return built.expect("sampled components are valid by construction");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    fn sp(n: u32, d0: &[u32], l1: &str, l2: &str) -> GeneralCharacter {
        make_character(
            CharFamily::Sp { n },
            d0.iter().map(|&d| Block::anonymous(d)).collect(),
            Unipotent::Symbol(sym(l1)),
            Some(sym(l2)),
            None,
        )
        .unwrap()
    }

    fn oeven(n: u32, eps: Sign, l1: &str, l2: &str) -> GeneralCharacter {
        make_character(CharFamily::OEven { n, eps }, vec![], Unipotent::Symbol(sym(l1)), Some(sym(l2)), None).unwrap()
    }

    fn oodd(n: u32, l1: &str, l2: &str, sign: Sign) -> GeneralCharacter {
        make_character(CharFamily::OOdd { n }, vec![], Unipotent::Symbol(sym(l1)), Some(sym(l2)), Some(sign)).unwrap()
    }

    fn pseudo() -> GeneralCharacter {
        sp(1, &[], "1,0|", "0|")
    }

    #[test]
    fn construction_examples() {
        let cusp = sp(2, &[], "|", "|2,1,0");
        assert!(cusp.is_cuspidal() && cusp.is_unipotent());
        let p = pseudo();
        assert!(p.is_cuspidal() && p.is_pseudo_unipotent());
        assert!(make_character(
            CharFamily::Sp { n: 3 },
            vec![Block::anonymous(4)],
            Unipotent::Symbol(sym("1|0")),
            Some(sym("0|")),
            None
        )
        .is_ok());
        assert_eq!(
            make_character(
                CharFamily::Sp { n: 3 },
                vec![Block::anonymous(6)],
                Unipotent::Symbol(sym("1|0")),
                Some(sym("0|")),
                None
            ),
            Err(Error::DimensionMismatch { expected: 6, actual: 8 })
        );
    }

    #[test]
    fn construction_errors() {
        let family = CharFamily::OOdd { n: 0 };
        assert_eq!(
            make_character(family, vec![], Unipotent::Symbol(sym("0|")), Some(sym("0|")), None),
            Err(Error::MissingSignBit)
        );
        assert_eq!(
            make_character(
                CharFamily::Sp { n: 0 },
                vec![],
                Unipotent::Symbol(sym("|")),
                Some(sym("0|")),
                Some(Sign::Plus)
            ),
            Err(Error::SpuriousField("sign"))
        );
        assert!(matches!(
            make_character(CharFamily::Sp { n: 0 }, vec![], Unipotent::Symbol(sym("0|")), Some(sym("0|")), None),
            Err(Error::WrongSeries(_))
        ));
        assert!(matches!(
            make_character(
                CharFamily::OEven { n: 1, eps: Sign::Plus },
                vec![],
                Unipotent::Symbol(sym("1,0|")),
                Some(sym("|")),
                None
            ),
            Err(Error::WrongSeries(_))
        ));
    }

    #[test]
    fn dims() {
        let u = make_character(
            CharFamily::Unitary { n: 3 },
            vec![Block::anonymous(2)],
            Unipotent::Partition("1".parse().unwrap()),
            None,
            None,
        )
        .unwrap();
        assert_eq!(char_dim(&u), 3);
        assert_eq!(char_dim(&sp(2, &[], "|", "|2,1,0")), 4);
        assert_eq!(char_dim(&oodd(2, "|2,1,0", "0|", Sign::Plus)), 5);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_char(&sp(2, &[], "|", "|2,1,0"), SpTargets::Even), 0);
        assert_eq!(delta_char(&sp(3, &[2], "1|0", "1,0|1"), SpTargets::Even), 1);
        assert_eq!(delta_char(&pseudo(), SpTargets::Odd), 0);
    }

    #[test]
    fn twists() {
        let rho = oeven(1, Sign::Plus, "1|0", "|");
        let t = sgn_twist(&rho).unwrap();
        assert_eq!(t.symbols().unwrap(), (&sym("0|1"), &sym("|")));
        assert_eq!(sgn_twist(&t).unwrap(), rho);
        let o = oodd(0, "0|", "0|", Sign::Plus);
        assert_eq!(sgn_twist(&o).unwrap(), oodd(0, "0|", "0|", Sign::Minus));
        let c = c_twist(&pseudo()).unwrap();
        assert_eq!(c.symbols().unwrap().0, &sym("|1,0"));
        assert_eq!(c_twist(&c).unwrap(), pseudo());
        let unip = sp(2, &[], "|", "|2,1,0");
        assert_eq!(c_twist(&unip).unwrap(), unip);
        assert_eq!(sgn_twist(&unip), Err(Error::WrongFamily { expected: "orthogonal" }));
        assert_eq!(c_twist(&rho), Err(Error::WrongFamily { expected: "symplectic" }));
    }

    #[test]
    fn correspondence_examples() {
        assert!(corresponds(&sp(0, &[], "|", "0|"), &oeven(0, Sign::Plus, "|", "|")).unwrap());
        assert!(corresponds(&sp(2, &[], "|", "|2,1,0"), &oodd(2, "|2,1,0", "0|", Sign::Plus)).unwrap());
        assert!(corresponds(&pseudo(), &oeven(1, Sign::Minus, "1,0|", "|")).unwrap());
        assert!(corresponds(&oeven(1, Sign::Minus, "1,0|", "|"), &pseudo()).unwrap());
        assert_eq!(corresponds(&pseudo(), &pseudo()), Err(Error::UnsupportedPair));
    }

    #[test]
    fn first_occurrence_examples() {
        let p = pseudo();
        assert_eq!(first_occurrence_general(&p, Target::OOdd), Ok(5));
        assert_eq!(first_occurrence_general(&c_twist(&p).unwrap(), Target::OOdd), Ok(1));
        let rho = sp(3, &[2], "1|0", "1,0|1");
        assert_eq!(first_occurrence_general(&rho, Target::OEvenPlus), Ok(6));
        assert_eq!(first_occurrence_general(&rho, Target::OEvenMinus), Ok(6));
        assert_eq!(first_occurrence_general(&rho, Target::Sp), Err(Error::UnsupportedTarget));
    }

    #[test]
    fn scan_agrees_on_examples() {
        let cache = SeriesCache::new();
        let cases = [
            (pseudo(), Target::OOdd),
            (pseudo(), Target::OOddC),
            (pseudo(), Target::OEvenPlus),
            (pseudo(), Target::OEvenMinus),
            (sp(3, &[2], "1|0", "1,0|1"), Target::OEvenPlus),
            (sp(3, &[2], "1|0", "1,0|1"), Target::OEvenMinus),
            (oeven(1, Sign::Minus, "1,0|", "|"), Target::Sp),
            (oodd(2, "|2,1,0", "0|", Sign::Minus), Target::Sp),
        ];
        for (rho, target) in cases {
            let (dim, partner) = first_occurrence_scan(&cache, &rho, target).unwrap();
            assert_eq!(first_occurrence_general(&rho, target).unwrap(), dim, "{rho} {target}");
            let source = if target == Target::OOddC { c_twist(&rho).unwrap() } else { rho };
            assert!(corresponds(&source, &partner).unwrap());
        }
    }

    #[test]
    fn preservation_examples() {
        let p = preservation_sum_general(&pseudo(), SpTargets::Odd).unwrap();
        assert_eq!((p.first, p.second, p.lhs, p.rhs), (5, 1, 6, 6));
        let rho = sp(3, &[2], "1|0", "1,0|1");
        let q = preservation_sum_general(&rho, SpTargets::Even).unwrap();
        assert_eq!((q.lhs, q.rhs), (12, 12));
        let triv = preservation_sum_general(&oeven(0, Sign::Plus, "|", "|"), SpTargets::Even).unwrap();
        assert_eq!((triv.lhs, triv.rhs), (0, 0));
    }

    #[test]
    fn odd_split_examples() {
        assert_eq!(odd_witt_split(&pseudo()), Ok((5, 1)));
        assert_eq!(odd_witt_split(&sp(2, &[], "|", "|2,1,0")), Ok((5, 5)));
        assert_eq!(odd_witt_split(&sp(0, &[], "|", "0|")), Ok((1, 1)));
    }

    #[test]
    fn literal_round_trip() {
        let lit = CharacterLiteral {
            family: "sp".into(),
            n: 3,
            d0_blocks: vec![Block::anonymous(2)],
            lambda1: "1|0".into(),
            lambda2: Some("1,0|1".into()),
            sign: None,
        };
        let rho = GeneralCharacter::try_from(lit.clone()).unwrap();
        assert_eq!(CharacterLiteral::from(rho), lit);
    }

    #[test]
    fn sampler_respects_bounds() {
        use rand::SeedableRng;
        let cache = SeriesCache::new();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for kind in [SampleKind::Unitary, SampleKind::Sp, SampleKind::OEven, SampleKind::OOdd] {
            for _ in 0..50 {
                let rho = random_character(&cache, &mut rng, kind, 12);
                assert!(char_dim(&rho) <= 12, "{rho}");
            }
        }
    }

    #[test]
    fn character_counts() {
        let cache = SeriesCache::new();
        // Sp_0: only the trivial character
        assert_eq!(all_characters(&cache, CharFamily::Sp { n: 0 }).len(), 1);
        // U_2: unipotent [2], [1,1], blocks {1}+[1], {2}, {1,1}
        assert_eq!(all_characters(&cache, CharFamily::Unitary { n: 2 }).len(), 5);
    }
}
