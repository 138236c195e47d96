//! Verification suites: every identity is checked against an independent
//! enumeration or scan at desk scale, and reported instance counts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::{
    all_characters, c_twist, first_occurrence_general, first_occurrence_scan, make_character, preservation_sum_general,
    random_character, sgn_twist, CharFamily, GeneralCharacter, SampleKind, SpTargets, Target, Unipotent,
};
use crate::cuspidal::{
    cuspidal_preservation_sums, pseudo_unipotent_count, pseudo_unipotent_even_first_occurrence,
    pseudo_unipotent_odd_first_occurrence, unipotent_cuspidal, unipotent_cuspidal_odd_first_occurrence, Report,
};
use crate::error::{parse_error, Error, Result};
use crate::partition::{interleaves, partitions_of, two_core, Partition};
use crate::symbol::{
    enumerate_series, extremal_delta_symbols, symbol_from_partition, symbols_of_rank, ExtremalClass, SeriesFamily,
    SeriesTag, Sign, Symbol,
};
use crate::theta::{
    first_occurrence_bruteforce, first_occurrence_unitary, in_b_sp_oeven, theta_zero, theta_zero_orth, theta_zero_sp,
    theta_zero_unitary, weil_pairs, weil_pairs_unitary, Parity, SeriesCache,
};

const EVEN_GROUP_SERIES: [SeriesFamily; 3] = [SeriesFamily::Sp, SeriesFamily::OEvenPlus, SeriesFamily::OEvenMinus];

/// Shown failures per check; the count is always complete.
const SHOWN_FAILURES: usize = 5;

/// A pass/fail report over `total` instances.
fn tally(check: &str, parameters: impl Into<String>, total: usize, failures: Vec<String>) -> Report {
    let expected = format!("{total} of {total} hold");
    let actual = if failures.is_empty() {
        expected.clone()
    } else {
        let shown: Vec<&str> = failures.iter().take(SHOWN_FAILURES).map(String::as_str).collect();
        format!("{} of {total} hold; {}", total - failures.len(), shown.join("; "))
    };
    Report::new(check, parameters, expected, actual)
}

fn series_up_to(max_rank: u32, families: &[SeriesFamily]) -> Vec<Symbol> {
    let mut out = Vec::new();
    for &f in families {
        for r in 0..=max_rank {
            out.extend(enumerate_series(SeriesTag::new(f, r)).expect("defect-governed family"));
        }
    }
    out
}

fn failures_of<T: Sync, F>(items: &[T], f: F) -> Vec<String>
where
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    items.par_iter().filter_map(f).collect()
}

/// `is_cuspidal ⇔ δ = 0 ⇔ Υ empty` on every series symbol of rank `<= max_rank`.
pub fn cuspidality_equivalence(max_rank: u32) -> Report {
    let symbols = series_up_to(max_rank, &EVEN_GROUP_SERIES);
    let failures = failures_of(&symbols, |s| {
        let (a, b, c) = (s.is_cuspidal(), s.delta() == 0, s.upsilon().is_empty());
        (a != b || b != c).then(|| format!("{s}: cuspidal {a}, delta0 {b}, upsilon-empty {c}"))
    });
    tally("cuspidality-equivalence", format!("rank<={max_rank}"), symbols.len(), failures)
}

/// Maximal δ over all rank-`n` symbols (any defect) and over defect ±2, with the
/// maximizer sets compared to the closed-form lists.
pub fn extremal_delta_classification(max_rank: u32) -> Vec<Report> {
    let mut out = Vec::new();
    for n in 0..=max_rank {
        let all = symbols_of_rank(n);
        let best = all.iter().map(Symbol::delta).max().unwrap_or(0);
        let maximizers: BTreeSet<Symbol> = all.iter().filter(|s| s.delta() == best).cloned().collect();
        let listed: BTreeSet<Symbol> =
            extremal_delta_symbols(n, ExtremalClass::Small).expect("class 0/±1").into_iter().collect();
        out.push(Report::new(
            "extremal-delta-any-defect",
            format!("n={n}"),
            format!("max {n}, {} maximizers as listed", listed.len()),
            format!(
                "max {best}, {} maximizers {}",
                maximizers.len(),
                if maximizers == listed { "as listed" } else { "differ from list" }
            ),
        ));
        if n == 0 {
            continue;
        }
        let two: Vec<&Symbol> = all.iter().filter(|s| s.defect().abs() == 2).collect();
        let best = two.iter().map(|s| s.delta()).max().unwrap_or(0);
        let maximizers: BTreeSet<Symbol> = two.iter().filter(|s| s.delta() == best).map(|s| (*s).clone()).collect();
        let listed: BTreeSet<Symbol> =
            extremal_delta_symbols(n, ExtremalClass::Two).expect("class ±2").into_iter().collect();
        out.push(Report::new(
            "extremal-delta-defect-two",
            format!("n={n}"),
            format!("max {}, {} maximizers as listed", n - 1, listed.len()),
            format!(
                "max {best}, {} maximizers {}",
                maximizers.len(),
                if maximizers == listed { "as listed" } else { "differ from list" }
            ),
        ));
    }
    out
}

/// The scanning first occurrence equals `θ₀` (partner class and rank) on
/// every symplectic symbol (both signs) and every even orthogonal symbol.
pub fn theta_zero_minimality(cache: &SeriesCache, max_rank: u32) -> Vec<Report> {
    let sp = series_up_to(max_rank, &[SeriesFamily::Sp]);
    let sp_failures = failures_of(&sp, |s| {
        for eps in Sign::both() {
            let closed = theta_zero_sp(s, eps).expect("sp symbol");
            let target = SeriesFamily::orthogonal(eps);
            match first_occurrence_bruteforce(cache, s, target) {
                Ok(fo) if fo.partner == closed && fo.space_dimension == 2 * closed.rank() => {}
                Ok(fo) => {
                    return Some(format!(
                        "{s} eps {eps}: scan {} at {}, closed {closed}",
                        fo.partner, fo.space_dimension
                    ))
                }
                Err(e) => return Some(format!("{s} eps {eps}: {e}")),
            }
        }
        None
    });
    let orth = series_up_to(max_rank, &[SeriesFamily::OEvenPlus, SeriesFamily::OEvenMinus]);
    let orth_failures = failures_of(&orth, |s| {
        let closed = theta_zero_orth(s).expect("orthogonal symbol");
        match first_occurrence_bruteforce(cache, s, SeriesFamily::Sp) {
            Ok(fo) if fo.partner == closed && fo.space_dimension == 2 * closed.rank() => None,
            Ok(fo) => Some(format!("{s}: scan {} at {}, closed {closed}", fo.partner, fo.space_dimension)),
            Err(e) => Some(format!("{s}: {e}")),
        }
    });
    vec![
        tally("theta-zero-minimal-symplectic", format!("rank<={max_rank}, both signs"), 2 * sp.len(), sp_failures),
        tally("theta-zero-minimal-orthogonal", format!("rank<={max_rank}"), orth.len(), orth_failures),
    ]
}

/// `rk θ₀⁺ + rk θ₀⁻ = 2 rk − δ + 1` on symplectic symbols and
/// `rk θ₀(Λ) + rk θ₀(Λᵗ) = 2 rk − δ` on even orthogonal symbols.
pub fn theta_zero_rank_sums(max_rank: u32) -> Vec<Report> {
    let sp = series_up_to(max_rank, &[SeriesFamily::Sp]);
    let sp_failures = failures_of(&sp, |s| {
        let lhs = theta_zero(s, Sign::Plus).rank() + theta_zero(s, Sign::Minus).rank();
        let rhs = 2 * s.rank() + 1 - s.delta();
        (lhs != rhs).then(|| format!("{s}: {lhs} != {rhs}"))
    });
    let orth = series_up_to(max_rank, &[SeriesFamily::OEvenPlus, SeriesFamily::OEvenMinus]);
    let orth_failures = failures_of(&orth, |s| {
        let lhs = theta_zero_orth(s).ok()?.rank() + theta_zero_orth(&s.transpose()).ok()?.rank();
        let rhs = 2 * s.rank() - s.delta();
        (lhs != rhs).then(|| format!("{s}: {lhs} != {rhs}"))
    });
    vec![
        tally("theta-zero-rank-sum-symplectic", format!("rank<={max_rank}"), sp.len(), sp_failures),
        tally("theta-zero-rank-sum-orthogonal", format!("rank<={max_rank}"), orth.len(), orth_failures),
    ]
}

fn partitions_up_to(max_size: u32) -> Vec<Partition> {
    (0..=max_size).flat_map(partitions_of).collect()
}

/// Unitary preservation `n₀'⁺ + n₀'⁻ = 2n − 2δ(Λ_λ) + 1` with both terms from
/// the scanning oracle, the closed-form partner agreeing with the scan, and
/// the rank identity for `θ₀^±(Λ_λ)`.
pub fn unitary_preservation(cache: &SeriesCache, max_size: u32) -> Vec<Report> {
    let lambdas = partitions_up_to(max_size);
    let sum_failures = failures_of(&lambdas, |lambda| {
        let even = first_occurrence_unitary(cache, lambda, Parity::Even).ok()?;
        let odd = first_occurrence_unitary(cache, lambda, Parity::Odd).ok()?;
        let lhs = (even.space_dimension + odd.space_dimension) as i64;
        let rhs = 2 * lambda.size() as i64 - 2 * symbol_from_partition(lambda).delta() as i64 + 1;
        (lhs != rhs).then(|| format!("{lambda}: {lhs} != {rhs}"))
    });
    let closed_failures = failures_of(&lambdas, |lambda| {
        for parity in [Parity::Even, Parity::Odd] {
            let scan = first_occurrence_unitary(cache, lambda, parity).ok()?;
            let closed = theta_zero_unitary(lambda, parity);
            let closed_symbol = symbol_from_partition(&closed);
            if closed.size() != scan.space_dimension || !scan.witnesses.contains(&closed_symbol) {
                return Some(format!("{lambda} {parity}: closed {closed}, scan size {}", scan.space_dimension));
            }
        }
        None
    });
    let rank_failures = failures_of(&lambdas, |lambda| {
        let s = symbol_from_partition(lambda);
        let lhs = theta_zero(&s, Sign::Plus).rank() + theta_zero(&s, Sign::Minus).rank();
        let rhs = 2 * s.rank() + u32::from(s.defect() % 2 != 0) - s.delta();
        (lhs != rhs).then(|| format!("{lambda}: {lhs} != {rhs}"))
    });
    let params = format!("|lambda|<={max_size}");
    vec![
        tally("unitary-preservation-sum", params.clone(), lambdas.len(), sum_failures),
        tally("unitary-closed-form-partner", params.clone(), 2 * lambdas.len(), closed_failures),
        tally("unitary-theta-zero-rank-sum", params, lambdas.len(), rank_failures),
    ]
}

/// Closed-form unipotent cuspidal counts agree with filtering the enumeration,
/// and the cuspidal ranks are exactly the predicted ones.
pub fn cuspidal_classification(max_rank: u32) -> Vec<Report> {
    let mut out = Vec::new();
    for family in [SeriesFamily::Sp, SeriesFamily::OEvenPlus, SeriesFamily::OEvenMinus, SeriesFamily::U] {
        let mut found = Vec::new();
        let mut mismatches = Vec::new();
        for rank in 0..=max_rank {
            let tag = SeriesTag::new(family, rank);
            let mut filtered: Vec<Symbol> = if family == SeriesFamily::U {
                partitions_of(rank).iter().map(symbol_from_partition).filter(Symbol::is_cuspidal).collect()
            } else {
                enumerate_series(tag).expect("series").into_iter().filter(Symbol::is_cuspidal).collect()
            };
            let mut closed = unipotent_cuspidal(tag).characters;
            filtered.sort();
            closed.sort();
            if filtered != closed {
                mismatches.push(rank.to_string());
            }
            if !filtered.is_empty() {
                found.push(format!("{rank}:{}", filtered.len()));
            }
        }
        let predicted: Vec<String> = (0..=max_rank)
            .filter_map(|n| {
                let count = match family {
                    SeriesFamily::Sp => (0..=n).any(|m| m * (m + 1) == n) as usize,
                    SeriesFamily::U => (0..=n).any(|m| m * (m + 1) / 2 == n) as usize,
                    SeriesFamily::OEvenPlus | SeriesFamily::OEvenMinus => {
                        let plus = family == SeriesFamily::OEvenPlus;
                        match (0..=n).find(|m| m * m == n) {
                            Some(0) if plus => 1,
                            Some(m) if m > 0 && (m % 2 == 0) == plus => 2,
                            _ => 0,
                        }
                    }
                };
                (count > 0).then(|| format!("{n}:{count}"))
            })
            .collect();
        out.push(Report::new(
            "cuspidal-classification",
            format!("{family} rank<={max_rank}"),
            format!("{} closed form agrees", predicted.join(",")),
            format!(
                "{} {}",
                found.join(","),
                if mismatches.is_empty() {
                    "closed form agrees".to_string()
                } else {
                    format!("closed form differs at {}", mismatches.join(","))
                }
            ),
        ));
    }
    out
}

/// Per-suite RNG: the root seed mixed with a suite tag; one stream per sample.
pub fn sample_rng(root: u64, tag: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root ^ tag);
    rng.set_stream(index);
    rng
}

fn kind_tag(kind: SampleKind) -> u64 {
    match kind {
        SampleKind::Unitary => 0x5531_0919,
        SampleKind::Sp => 0x5350_0921,
        SampleKind::OEven => 0x4f45_0920,
        SampleKind::OOdd => 0x4f4f_0920,
    }
}

/// Sampling parameters for the generalized preservation suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub seed: u64,
    pub samples: usize,
    /// How many of the samples are also cross-checked by scanning.
    pub scanned: usize,
    pub max_dim: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 42, samples: 500, scanned: 100, max_dim: 12 }
    }
}

pub fn sample_characters(cache: &SeriesCache, kind: SampleKind, config: &SampleConfig) -> Vec<GeneralCharacter> {
    (0..config.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(config.seed, kind_tag(kind), i);
            random_character(cache, &mut rng, kind, config.max_dim)
        })
        .collect()
}

fn paired_targets(rho: &GeneralCharacter, targets: SpTargets) -> Vec<(GeneralCharacter, Target)> {
    match rho.family() {
        CharFamily::Unitary { .. } => vec![(rho.clone(), Target::UEven), (rho.clone(), Target::UOdd)],
        CharFamily::OEven { .. } | CharFamily::OOdd { .. } => {
            vec![(rho.clone(), Target::Sp), (sgn_twist(rho).expect("orthogonal"), Target::Sp)]
        }
        CharFamily::Sp { .. } => match targets {
            SpTargets::Even => vec![(rho.clone(), Target::OEvenPlus), (rho.clone(), Target::OEvenMinus)],
            SpTargets::Odd => vec![(rho.clone(), Target::OOdd), (c_twist(rho).expect("symplectic"), Target::OOdd)],
        },
    }
}

/// Generalized preservation on random characters, with the closed-form first
/// occurrences cross-checked against the scan on the first `scanned` samples.
pub fn generalized_preservation(
    cache: &SeriesCache,
    kind: SampleKind,
    targets: SpTargets,
    config: &SampleConfig,
) -> Vec<Report> {
    let samples = sample_characters(cache, kind, config);
    let name = match (kind, targets) {
        (SampleKind::Unitary, _) => "unitary",
        (SampleKind::OEven, _) => "even-orthogonal",
        (SampleKind::OOdd, _) => "odd-orthogonal",
        (SampleKind::Sp, SpTargets::Even) => "symplectic-even-targets",
        (SampleKind::Sp, SpTargets::Odd) => "symplectic-odd-targets",
    };
    let params = format!("seed={} samples={} dim<={}", config.seed, config.samples, config.max_dim);
    let sum_failures = failures_of(&samples, |rho| match preservation_sum_general(rho, targets) {
        Ok(p) if p.lhs == p.rhs => None,
        Ok(p) => Some(format!("{rho}: {} != {}", p.lhs, p.rhs)),
        Err(e) => Some(format!("{rho}: {e}")),
    });
    let scanned = &samples[..config.scanned.min(samples.len())];
    let scan_failures = failures_of(scanned, |rho| {
        for (source, target) in paired_targets(rho, targets) {
            let closed = first_occurrence_general(&source, target);
            let scan = first_occurrence_scan(cache, &source, target).map(|(d, _)| d);
            if closed != scan {
                return Some(format!("{source} -> {target}: closed {closed:?}, scan {scan:?}"));
            }
        }
        None
    });
    vec![
        tally(&format!("preservation-{name}"), params.clone(), samples.len(), sum_failures),
        tally(
            &format!("closed-form-vs-scan-{name}"),
            format!("{params} scanned={}", scanned.len()),
            scanned.len(),
            scan_failures,
        ),
    ]
}

/// Pseudo-unipotent cuspidal counts and the three first-occurrence statements for `m <= max_m`.
pub fn pseudo_unipotent_cuspidal_checks(cache: &SeriesCache, max_m: u32) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        out.push(pseudo_unipotent_count(m));
        out.push(pseudo_unipotent_even_first_occurrence(cache, m)?);
        out.push(pseudo_unipotent_odd_first_occurrence(cache, m)?);
    }
    for m in 0..=max_m {
        out.push(unipotent_cuspidal_odd_first_occurrence(cache, m)?);
    }
    Ok(out)
}

fn unique_report(check: &str, params: String, expected: &GeneralCharacter, found: &[GeneralCharacter]) -> Report {
    let actual = if found.len() == 1 && found[0] == *expected {
        format!("unique {expected}")
    } else {
        let listed: Vec<String> = found.iter().map(ToString::to_string).collect();
        format!("{} found: {}", found.len(), listed.join(" | "))
    };
    Report::new(check, params, format!("unique {expected}"), actual)
}

fn unipotent_of(family: CharFamily, lambda2: Symbol) -> GeneralCharacter {
    character_of(family, Symbol::default(), lambda2, None).expect("valid unipotent character")
}

fn character_of(family: CharFamily, lambda1: Symbol, lambda2: Symbol, sign: Option<Sign>) -> Result<GeneralCharacter> {
    make_character(family, vec![], Unipotent::Symbol(lambda1), Some(lambda2), sign)
}

/// Exhaustive searches for the characters with the most extreme first
/// occurrences, for `n <= max_n`.
pub fn extremal_character_uniqueness(cache: &SeriesCache, max_n: u32) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        // symplectic, even orthogonal targets
        let family = CharFamily::Sp { n };
        let chars = all_characters(cache, family);
        let fos: Vec<(u32, u32, u32, u32)> = chars
            .par_iter()
            .map(|rho| {
                Ok((
                    first_occurrence_general(rho, Target::OEvenPlus)?,
                    first_occurrence_general(rho, Target::OEvenMinus)?,
                    first_occurrence_general(rho, Target::OOdd)?,
                    first_occurrence_general(rho, Target::OOddC)?,
                ))
            })
            .collect::<Result<_>>()?;
        for k in 0..=n {
            let found: Vec<GeneralCharacter> = chars
                .iter()
                .zip(&fos)
                .filter(|(_, f)| f.0 <= 2 * k && f.1 <= 2 * (n - k) + 2)
                .map(|(c, _)| c.clone())
                .collect();
            let expected = unipotent_of(family, Symbol::from_rows(&[n - k + 1, 0], &[k]).normalize());
            out.push(unique_report("unique-symplectic-even-extreme", format!("n={n} k={k}"), &expected, &found));

            let found: Vec<GeneralCharacter> = chars
                .iter()
                .zip(&fos)
                .filter(|(_, f)| f.2 <= 2 * k + 1 && f.3 <= 2 * (n - k) + 1)
                .map(|(c, _)| c.clone())
                .collect();
            let expected = character_of(
                family,
                Symbol::from_rows(&[n - k], &[k]).normalize(),
                Symbol::from_rows(&[0], &[]),
                None,
            )?;
            out.push(unique_report("unique-symplectic-odd-extreme", format!("n={n} k={k}"), &expected, &found));
        }

        for eps in Sign::both() {
            let family = CharFamily::OEven { n, eps };
            let chars = all_characters(cache, family);
            let fos: Vec<(u32, u32)> = chars
                .par_iter()
                .map(|rho| {
                    Ok((
                        first_occurrence_general(rho, Target::Sp)? / 2,
                        first_occurrence_general(&sgn_twist(rho)?, Target::Sp)? / 2,
                    ))
                })
                .collect::<Result<_>>()?;
            // n' + n'' is at least n for O⁺ and n + 1 for O⁻
            let floor = if eps == Sign::Plus { n } else { n + 1 };
            let below = fos.iter().filter(|(a, b)| a + b < floor).count();
            if !chars.is_empty() {
                out.push(Report::new(
                    &format!("no-orthogonal-pair-below-bound-{}", if eps == Sign::Plus { "plus" } else { "minus" }),
                    format!("n={n}"),
                    "0 characters",
                    format!("{below} characters"),
                ));
            }
            let ks: Vec<u32> = match eps {
                Sign::Plus => (0..=n).collect(),
                Sign::Minus => (0..n).collect(),
            };
            for k in ks {
                let (bound1, bound2, lambda2) = match eps {
                    Sign::Plus => (k, n - k, Symbol::from_rows(&[n - k], &[k])),
                    Sign::Minus => (k, n - k + 1, Symbol::from_rows(&[k], &[n - k + 1, 1, 0])),
                };
                let found: Vec<GeneralCharacter> = chars
                    .iter()
                    .zip(&fos)
                    .filter(|(_, f)| f.0 <= bound1 && f.1 <= bound2)
                    .map(|(c, _)| c.clone())
                    .collect();
                let expected = unipotent_of(family, lambda2.normalize());
                let check = if eps == Sign::Plus {
                    "unique-orthogonal-plus-extreme"
                } else {
                    "unique-orthogonal-minus-extreme"
                };
                out.push(unique_report(check, format!("n={n} k={k}"), &expected, &found));
            }
        }
    }
    Ok(out)
}

/// Shift invariance, `rk = |Υ| + ⌊(def/2)²⌋`, and duplicate-free enumeration.
pub fn symbol_statistics(max_rank: u32) -> Vec<Report> {
    let symbols = series_up_to(max_rank, &EVEN_GROUP_SERIES);
    let shift_failures = failures_of(&symbols, |s| {
        let t = s.shifted_up();
        let same =
            s.rank() == t.rank() && s.defect() == t.defect() && s.delta() == t.delta() && s.upsilon() == t.upsilon();
        (!same).then(|| format!("{s}"))
    });
    let identity_failures = failures_of(&symbols, |s| {
        (s.rank() != s.upsilon().size() + crate::symbol::defect_floor(s.defect())).then(|| format!("{s}"))
    });
    let mut duplicate_failures = Vec::new();
    let mut total = 0;
    for family in EVEN_GROUP_SERIES {
        for rank in 0..=max_rank {
            let tag = SeriesTag::new(family, rank);
            let list = enumerate_series(tag).expect("series");
            let distinct: BTreeSet<Symbol> = list.iter().map(Symbol::normalize).collect();
            total += 1;
            let members = list.iter().all(|s| crate::symbol::series_contains(tag, s).unwrap_or(false));
            if distinct.len() != list.len() || !members {
                duplicate_failures.push(tag.to_string());
            }
        }
    }
    let params = format!("rank<={max_rank}");
    vec![
        tally("shift-invariance", params.clone(), symbols.len(), shift_failures),
        tally("rank-upsilon-identity", params.clone(), symbols.len(), identity_failures),
        tally("enumeration-distinct-members", params, total, duplicate_failures),
    ]
}

/// `Λ_λ` is injective, satisfies `|λ| = |λ∞| + 2|Υ(Λ_λ)|`, and is cuspidal
/// exactly at the staircases.
pub fn unitary_symbols(max_size: u32) -> Vec<Report> {
    let lambdas = partitions_up_to(max_size);
    let symbols: BTreeSet<Symbol> = lambdas.iter().map(symbol_from_partition).collect();
    let injective = Report::new(
        "unitary-symbol-injective",
        format!("|lambda|<={max_size}"),
        format!("{} distinct", lambdas.len()),
        format!("{} distinct", symbols.len()),
    );
    let failures = failures_of(&lambdas, |lambda| {
        let s = symbol_from_partition(lambda);
        (lambda.size() != two_core(lambda).size() + 2 * s.upsilon().size()).then(|| lambda.to_string())
    });
    let size_identity = tally("unitary-symbol-core-identity", format!("|lambda|<={max_size}"), lambdas.len(), failures);
    let mut wrong = Vec::new();
    for n in 0..=max_size.min(15) {
        let count = partitions_of(n).iter().filter(|l| symbol_from_partition(l).is_cuspidal()).count();
        let triangular = (0..=n).any(|m| m * (m + 1) / 2 == n);
        if count != usize::from(triangular) {
            wrong.push(format!("n={n}: {count}"));
        }
    }
    let cuspidal = tally(
        "unitary-cuspidal-at-triangular",
        format!("n<={}", max_size.min(15)),
        max_size.min(15) as usize + 1,
        wrong,
    );
    vec![injective, size_identity, cuspidal]
}

/// Pair-set checks: the symplectic/orthogonal pair list equals a direct scan
/// over all symbol pairs, partner defects land in the right series, and the
/// unitary pair list respects the parity rule.
pub fn weil_pair_checks(max_rank: u32) -> Vec<Report> {
    let mut failures = Vec::new();
    let mut total = 0;
    for n in 0..=max_rank {
        for n_prime in 0..=max_rank {
            for eps in Sign::both() {
                total += 1;
                let listed = weil_pairs(n, eps, n_prime);
                let sp_side: Vec<Symbol> =
                    symbols_of_rank(n).into_iter().filter(|s| s.defect().rem_euclid(4) == 1).collect();
                let mut oracle = Vec::new();
                for a in &sp_side {
                    for b in symbols_of_rank(n_prime) {
                        let related = b.defect() == eps.value() - a.defect() && {
                            let (ua, ub) = (a.upsilon(), b.upsilon());
                            match eps {
                                Sign::Plus => interleaves(&ua.lower, &ub.upper) && interleaves(&ub.lower, &ua.upper),
                                Sign::Minus => interleaves(&ua.upper, &ub.lower) && interleaves(&ub.upper, &ua.lower),
                            }
                        };
                        if related {
                            oracle.push((a.clone(), b));
                        }
                    }
                }
                let distinct: BTreeSet<_> = listed.iter().cloned().collect();
                let oracle_set: BTreeSet<_> = oracle.into_iter().collect();
                if distinct.len() != listed.len() || distinct != oracle_set {
                    failures.push(format!("({n},{eps},{n_prime})"));
                }
            }
        }
    }
    let pairs = tally("weil-pairs-match-direct-scan", format!("ranks<={max_rank}"), total, failures);

    let sp = series_up_to(max_rank, &[SeriesFamily::Sp]);
    let all: Vec<Symbol> = (0..=max_rank).flat_map(symbols_of_rank).collect();
    let bookkeeping_failures = failures_of(&sp, |a| {
        for b in &all {
            for eps in Sign::both() {
                if in_b_sp_oeven(a, b, eps).unwrap_or(false) {
                    let want = SeriesFamily::orthogonal(eps);
                    if SeriesFamily::of_defect(b.defect()) != Some(want) {
                        return Some(format!("{a} ~ {b} for {eps}"));
                    }
                }
            }
        }
        None
    });
    let bookkeeping = tally("partner-defect-class", format!("rank<={max_rank}"), sp.len(), bookkeeping_failures);

    let mut unitary_total = 0;
    let mut unitary_failures = Vec::new();
    for n in 0..=max_rank.min(6) {
        for n_prime in 0..=max_rank.min(6) {
            unitary_total += 1;
            let result = std::panic::catch_unwind(|| weil_pairs_unitary(n, n_prime));
            if result.is_err() {
                unitary_failures.push(format!("({n},{n_prime})"));
            }
        }
    }
    let unitary =
        tally("unitary-pairs-branch-parity", format!("sizes<={}", max_rank.min(6)), unitary_total, unitary_failures);
    vec![pairs, bookkeeping, unitary]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "symbol-lemmas")]
    SymbolLemmas,
    #[serde(rename = "unipotent-theta")]
    UnipotentTheta,
    #[serde(rename = "preservation-u")]
    PreservationU,
    #[serde(rename = "preservation-o")]
    PreservationO,
    #[serde(rename = "preservation-sp-even")]
    PreservationSpEven,
    #[serde(rename = "preservation-sp-odd")]
    PreservationSpOdd,
    #[serde(rename = "cuspidal-catalog")]
    CuspidalCatalog,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::SymbolLemmas,
        Suite::UnipotentTheta,
        Suite::PreservationU,
        Suite::PreservationO,
        Suite::PreservationSpEven,
        Suite::PreservationSpOdd,
        Suite::CuspidalCatalog,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SymbolLemmas => "symbol-lemmas",
            Suite::UnipotentTheta => "unipotent-theta",
            Suite::PreservationU => "preservation-u",
            Suite::PreservationO => "preservation-o",
            Suite::PreservationSpEven => "preservation-sp-even",
            Suite::PreservationSpOdd => "preservation-sp-odd",
            Suite::CuspidalCatalog => "cuspidal-catalog",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim())
            .ok_or_else(|| parse_error("suite", s, "unknown suite"))
    }
}

/// Bounds for a suite run. `max_rank` scales every exhaustive check; the
/// heavier checks clamp it to their desk-scale bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub max_rank: u32,
    pub sampling: SampleConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_rank: 8, sampling: SampleConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Report>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|r| r.pass)
    }
}

pub fn run_suite(cache: &SeriesCache, suite: Suite, config: &VerifyConfig) -> Result<SuiteReport> {
    let r = config.max_rank;
    let checks = match suite {
        Suite::SymbolLemmas => {
            let mut v = vec![cuspidality_equivalence(r)];
            v.extend(extremal_delta_classification(r.min(8)));
            v.extend(theta_zero_rank_sums(r));
            v.extend(symbol_statistics(r));
            v.extend(unitary_symbols((2 * r).min(16)));
            v
        }
        Suite::UnipotentTheta => {
            let mut v = theta_zero_minimality(cache, r.min(8));
            v.extend(unitary_preservation(cache, r.min(14)));
            v.extend(weil_pair_checks(r.min(6)));
            v
        }
        Suite::PreservationU => generalized_preservation(cache, SampleKind::Unitary, SpTargets::Even, &config.sampling),
        Suite::PreservationO => {
            let mut v = generalized_preservation(cache, SampleKind::OEven, SpTargets::Even, &config.sampling);
            v.extend(generalized_preservation(cache, SampleKind::OOdd, SpTargets::Even, &config.sampling));
            v.extend(
                extremal_character_uniqueness(cache, r.min(5))?.into_iter().filter(|c| c.check.contains("orthogonal")),
            );
            v
        }
        Suite::PreservationSpEven => {
            let mut v = generalized_preservation(cache, SampleKind::Sp, SpTargets::Even, &config.sampling);
            v.extend(
                extremal_character_uniqueness(cache, r.min(5))?
                    .into_iter()
                    .filter(|c| c.check == "unique-symplectic-even-extreme"),
            );
            v
        }
        Suite::PreservationSpOdd => {
            let mut v = generalized_preservation(cache, SampleKind::Sp, SpTargets::Odd, &config.sampling);
            v.extend(
                extremal_character_uniqueness(cache, r.min(5))?
                    .into_iter()
                    .filter(|c| c.check == "unique-symplectic-odd-extreme"),
            );
            v
        }
        Suite::CuspidalCatalog => {
            let mut v = cuspidal_classification(r.max(12));
            for m in 0..=3 {
                v.extend(cuspidal_preservation_sums(cache, m)?);
            }
            v.extend(pseudo_unipotent_cuspidal_checks(cache, 2)?);
            v
        }
    };
    Ok(SuiteReport { suite, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exhaustive_checks_pass() {
        assert!(cuspidality_equivalence(5).pass);
        assert!(extremal_delta_classification(5).iter().all(|r| r.pass));
        assert!(theta_zero_rank_sums(6).iter().all(|r| r.pass));
        assert!(symbol_statistics(5).iter().all(|r| r.pass));
        assert!(unitary_symbols(8).iter().all(|r| r.pass));
    }

    #[test]
    fn small_theta_checks_pass() {
        let cache = SeriesCache::new();
        for r in theta_zero_minimality(&cache, 4) {
            assert!(r.pass, "{r:?}");
        }
        for r in unitary_preservation(&cache, 6) {
            assert!(r.pass, "{r:?}");
        }
        for r in weil_pair_checks(3) {
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let cache = SeriesCache::new();
        let config = SampleConfig { samples: 20, ..SampleConfig::default() };
        let a = sample_characters(&cache, SampleKind::Sp, &config);
        let b = sample_characters(&cache, SampleKind::Sp, &config);
        assert_eq!(a, b);
        let other = sample_characters(&cache, SampleKind::Sp, &SampleConfig { seed: 7, ..config });
        assert_ne!(a, other);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("unknown-suite".parse::<Suite>().is_err());
    }
}
