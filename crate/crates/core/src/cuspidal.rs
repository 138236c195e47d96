//! Closed-form cuspidal classification and the first-occurrence statements
//! for (pseudo-)unipotent cuspidal characters, as executable checks.

use serde::{Deserialize, Serialize};

use crate::character::{
    c_twist, char_dim, first_occurrence_general, first_occurrence_scan, make_character, odd_witt_split,
    preservation_sum_general, sgn_twist, Block, CharFamily, GeneralCharacter, SpTargets, Target, Unipotent,
};
use crate::error::Result;
use crate::partition::{Bipartition, Partition};
use crate::symbol::{symbol_from_partition, SeriesFamily, SeriesTag, Sign, Symbol};
use crate::theta::{first_occurrence_bruteforce, first_occurrence_unitary, Parity, SeriesCache};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalRecord<G, C> {
    pub group: G,
    pub characters: Vec<C>,
    pub count: usize,
}

impl<G, C> CuspidalRecord<G, C> {
    fn new(group: G, characters: Vec<C>) -> Self {
        CuspidalRecord { count: characters.len(), group, characters }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub parameters: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Report {
    pub fn new(
        check: &str,
        parameters: impl Into<String>,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Self {
        let (expected, actual) = (expected.into(), actual.into());
        Report { check: check.into(), parameters: parameters.into(), pass: expected == actual, expected, actual }
    }
}

/// `m` with `f(m) = n`, for increasing `f`.
fn solve(n: u32, f: impl Fn(u32) -> u32) -> Option<u32> {
    (0..=n).take_while(|&m| f(m) <= n).find(|&m| f(m) == n)
}

/// The cuspidal symbol of the given defect (empty `Υ`).
pub fn cuspidal_symbol(defect: i32) -> Symbol {
    Symbol::with_upsilon(&Bipartition::default(), defect)
}

/// Unipotent cuspidal characters of a group. For `U` the record lists `Λ_λ`.
pub fn unipotent_cuspidal(tag: SeriesTag) -> CuspidalRecord<SeriesTag, Symbol> {
    let n = tag.rank;
    let symbols = match tag.family {
        SeriesFamily::Sp => solve(n, |m| m * (m + 1))
            .map(|m| {
                let d = 2 * m as i32 + 1;
                vec![cuspidal_symbol(if m % 2 == 0 { d } else { -d })]
            })
            .unwrap_or_default(),
        SeriesFamily::OEvenPlus | SeriesFamily::OEvenMinus => {
            let eps = if tag.family == SeriesFamily::OEvenPlus { Sign::Plus } else { Sign::Minus };
            match solve(n, |m| m * m) {
                Some(0) if eps == Sign::Plus => vec![Symbol::default()],
                Some(m) if m > 0 && (m % 2 == 0) == (eps == Sign::Plus) => {
                    vec![cuspidal_symbol(2 * m as i32), cuspidal_symbol(-2 * m as i32)]
                }
                _ => vec![],
            }
        }
        SeriesFamily::U => solve(n, |m| m * (m + 1) / 2)
            .map(|m| vec![symbol_from_partition(&Partition::staircase(m))])
            .unwrap_or_default(),
    };
    CuspidalRecord::new(tag, symbols)
}

fn trivial_sp() -> Symbol {
    Symbol::from_rows(&[0], &[])
}

fn sp_character(n: u32, lambda1: Symbol, lambda2: Symbol) -> GeneralCharacter {
    make_character(CharFamily::Sp { n }, vec![], Unipotent::Symbol(lambda1), Some(lambda2), None)
        .expect("valid symplectic character")
}

/// Pseudo-unipotent cuspidal characters of `Sp_2n`: none unless `n = m²`;
/// two for `m > 0`, swapped by the `c` twist.
pub fn pseudo_unipotent_cuspidal_sp(n: u32) -> CuspidalRecord<CharFamily, GeneralCharacter> {
    let family = CharFamily::Sp { n };
    let characters = match solve(n, |m| m * m) {
        Some(0) => vec![sp_character(0, Symbol::default(), trivial_sp())],
        Some(m) => [2 * m as i32, -2 * m as i32]
            .into_iter()
            .map(|d| sp_character(n, cuspidal_symbol(d), trivial_sp()))
            .collect(),
        None => vec![],
    };
    CuspidalRecord::new(family, characters)
}

/// The unipotent cuspidal character of `Sp_2m(m+1)`.
pub fn unipotent_cuspidal_sp_character(m: u32) -> GeneralCharacter {
    let n = m * (m + 1);
    let lambda2 = unipotent_cuspidal(SeriesTag::new(SeriesFamily::Sp, n)).characters.remove(0);
    sp_character(n, Symbol::default(), lambda2)
}

fn tagged(ok: bool, tag: &str) -> String {
    if ok {
        tag.to_string()
    } else {
        format!("not {tag}")
    }
}

/// Pseudo-unipotent cuspidals of `Sp_2m²` against even orthogonal targets:
/// first occurrences `2m²` and `2m² + 2`, with a pseudo-unipotent partner
/// (cuspidal `λ1`, trivial `λ2`) at `2m²`.
pub fn pseudo_unipotent_even_first_occurrence(cache: &SeriesCache, m: u32) -> Result<Report> {
    let n = m * m;
    let lower = 2 * n;
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    for rho in pseudo_unipotent_cuspidal_sp(n).characters {
        let mut dims = Vec::new();
        for target in [Target::OEvenPlus, Target::OEvenMinus] {
            let closed = first_occurrence_general(&rho, target)?;
            let (scanned, partner) = first_occurrence_scan(cache, &rho, target)?;
            let (l1, l2) = partner.symbols().expect("even orthogonal partner");
            let shape = if l1.is_cuspidal() && *l2 == Symbol::default() && partner.d0() == 0 {
                "cuspidal x trivial"
            } else {
                "other"
            };
            dims.push((closed, scanned, if closed == lower { shape } else { "-" }));
        }
        dims.sort();
        expected.push(format!("[({lower},{lower},cuspidal x trivial), ({},{},-)]", lower + 2, lower + 2));
        actual.push(format!(
            "[{}]",
            dims.iter().map(|(a, b, s)| format!("({a},{b},{s})")).collect::<Vec<_>>().join(", ")
        ));
    }
    Ok(Report::new("pseudo-unipotent-even-first-occurrence", format!("m={m}"), expected.join("; "), actual.join("; ")))
}

/// The unipotent cuspidal of `Sp_2m(m+1)` first occurs in the odd orthogonal
/// tower at `2m(m+1) + 1`, with a pseudo-unipotent cuspidal partner.
pub fn unipotent_cuspidal_odd_first_occurrence(cache: &SeriesCache, m: u32) -> Result<Report> {
    let rho = unipotent_cuspidal_sp_character(m);
    let closed = first_occurrence_general(&rho, Target::OOdd)?;
    let (scanned, partner) = first_occurrence_scan(cache, &rho, Target::OOdd)?;
    let want = 2 * m * (m + 1) + 1;
    Ok(Report::new(
        "unipotent-cuspidal-odd-first-occurrence",
        format!("m={m}"),
        format!("{want} {want} cuspidal pseudo-unipotent"),
        format!(
            "{closed} {scanned} {}",
            tagged(partner.is_cuspidal() && partner.is_pseudo_unipotent(), "cuspidal pseudo-unipotent")
        ),
    ))
}

/// The pseudo-unipotent cuspidals `ρ`, `ρ^c` of `Sp_2m²` first occur in the
/// odd orthogonal tower at `2m(m-1) + 1` and `2m(m+1) + 1`, with unipotent
/// cuspidal partners.
pub fn pseudo_unipotent_odd_first_occurrence(cache: &SeriesCache, m: u32) -> Result<Report> {
    let mut actual = Vec::new();
    for rho in pseudo_unipotent_cuspidal_sp(m * m).characters {
        let closed = first_occurrence_general(&rho, Target::OOdd)?;
        let (scanned, partner) = first_occurrence_scan(cache, &rho, Target::OOdd)?;
        actual.push((closed, scanned, tagged(partner.is_cuspidal() && partner.is_unipotent(), "cuspidal unipotent")));
    }
    actual.sort();
    let expected = [2 * m * m.saturating_sub(1) + 1, 2 * m * (m + 1) + 1]
        .map(|d| format!("({d},{d},cuspidal unipotent)"))
        .join(", ");
    let actual = actual.iter().map(|(a, b, s)| format!("({a},{b},{s})")).collect::<Vec<_>>().join(", ");
    Ok(Report::new("pseudo-unipotent-odd-first-occurrence", format!("m={m}"), expected, actual))
}

/// Pseudo-unipotent cuspidal count and the `c` twist swapping the pair.
pub fn pseudo_unipotent_count(m: u32) -> Report {
    let record = pseudo_unipotent_cuspidal_sp(m * m);
    let swapped = record.count == 2
        && c_twist(&record.characters[0]).ok().as_ref() == Some(&record.characters[1])
        && c_twist(&record.characters[1]).ok().as_ref() == Some(&record.characters[0]);
    let cuspidal = record.characters.iter().all(|c| c.is_cuspidal() && c.is_pseudo_unipotent());
    Report::new(
        "pseudo-unipotent-cuspidal-count",
        format!("m={m}"),
        "2 swapped cuspidal",
        format!(
            "{} {} {}",
            record.count,
            if swapped { "swapped" } else { "not-swapped" },
            if cuspidal { "cuspidal" } else { "not-cuspidal" }
        ),
    )
}

/// Cuspidal characters (`d0 = 0`, cuspidal components) of a family, built
/// from the closed-form catalogue.
pub fn cuspidal_characters(family: CharFamily) -> Vec<GeneralCharacter> {
    let n = family.n();
    let mut out = Vec::new();
    let cusp = |f: SeriesFamily, r: u32| unipotent_cuspidal(SeriesTag::new(f, r)).characters;
    let both = |r: u32| {
        let mut v = cusp(SeriesFamily::OEvenPlus, r);
        v.extend(cusp(SeriesFamily::OEvenMinus, r));
        v
    };
    match family {
        CharFamily::Unitary { .. } => {
            if let Some(m) = solve(n, |m| m * (m + 1) / 2) {
                out.extend(make_character(family, vec![], Unipotent::Partition(Partition::staircase(m)), None, None));
            }
        }
        _ => {
            for r1 in 0..=n {
                let r2 = n - r1;
                let (first, second) = match family {
                    CharFamily::Sp { .. } => (both(r1), cusp(SeriesFamily::Sp, r2)),
                    CharFamily::OEven { .. } => (both(r1), both(r2)),
                    _ => (cusp(SeriesFamily::Sp, r1), cusp(SeriesFamily::Sp, r2)),
                };
                for a in &first {
                    for b in &second {
                        let signs: &[Option<Sign>] = if matches!(family, CharFamily::OOdd { .. }) {
                            &[Some(Sign::Plus), Some(Sign::Minus)]
                        } else {
                            &[None]
                        };
                        for &sign in signs {
                            out.extend(
                                make_character(
                                    family,
                                    Vec::<Block>::new(),
                                    Unipotent::Symbol(a.clone()),
                                    Some(b.clone()),
                                    sign,
                                )
                                .ok(),
                            );
                        }
                    }
                }
            }
        }
    }
    out
}

/// The cuspidal preservation sums for index `m`: unitary `m(m+1) + 1`, even
/// orthogonal `4m²`, symplectic `4m(m+1) + 2`, each through the scanning
/// oracles; and `2 dim + c` on every cuspidal model character of rank up to
/// `m(m+1)`.
pub fn cuspidal_preservation_sums(cache: &SeriesCache, m: u32) -> Result<Vec<Report>> {
    let mut out = Vec::new();

    let lambda = Partition::staircase(m);
    let even = first_occurrence_unitary(cache, &lambda, Parity::Even)?.space_dimension;
    let odd = first_occurrence_unitary(cache, &lambda, Parity::Odd)?.space_dimension;
    out.push(Report::new(
        "cuspidal-sum-unitary",
        format!("m={m}"),
        (m * (m + 1) + 1).to_string(),
        (even + odd).to_string(),
    ));

    let orth_family = if m.is_multiple_of(2) { SeriesFamily::OEvenPlus } else { SeriesFamily::OEvenMinus };
    let mut sums = Vec::new();
    for s in unipotent_cuspidal(SeriesTag::new(orth_family, m * m)).characters {
        let a = first_occurrence_bruteforce(cache, &s, SeriesFamily::Sp)?.space_dimension;
        let b = first_occurrence_bruteforce(cache, &s.transpose(), SeriesFamily::Sp)?.space_dimension;
        sums.push((a + b).to_string());
    }
    let copies = if m == 0 { 1 } else { 2 };
    out.push(Report::new(
        "cuspidal-sum-even-orthogonal",
        format!("m={m}"),
        vec![(4 * m * m).to_string(); copies].join(","),
        sums.join(","),
    ));

    let s = unipotent_cuspidal(SeriesTag::new(SeriesFamily::Sp, m * (m + 1))).characters.remove(0);
    let plus = first_occurrence_bruteforce(cache, &s, SeriesFamily::OEvenPlus)?.space_dimension;
    let minus = first_occurrence_bruteforce(cache, &s, SeriesFamily::OEvenMinus)?.space_dimension;
    out.push(Report::new(
        "cuspidal-sum-symplectic",
        format!("m={m}"),
        (4 * m * (m + 1) + 2).to_string(),
        (plus + minus).to_string(),
    ));

    let bound = m * (m + 1);
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 0..=bound {
        let families = [
            CharFamily::Unitary { n },
            CharFamily::Sp { n },
            CharFamily::OEven { n, eps: Sign::Plus },
            CharFamily::OEven { n, eps: Sign::Minus },
            CharFamily::OOdd { n },
        ];
        for family in families {
            for rho in cuspidal_characters(family) {
                let dim = char_dim(&rho) as i64;
                let mut cases = Vec::new();
                match family {
                    CharFamily::Unitary { .. } => {
                        cases.push((preservation_sum_general(&rho, SpTargets::Even)?.lhs, 2 * dim + 1))
                    }
                    CharFamily::Sp { .. } => {
                        cases.push((preservation_sum_general(&rho, SpTargets::Even)?.lhs, 2 * dim + 2));
                        let (a, b) = odd_witt_split(&rho)?;
                        cases.push((a as i64 + b as i64, 2 * dim + 2));
                    }
                    _ => {
                        let a = first_occurrence_general(&rho, Target::Sp)?;
                        let b = first_occurrence_general(&sgn_twist(&rho)?, Target::Sp)?;
                        cases.push((a as i64 + b as i64, 2 * dim));
                    }
                }
                for (lhs, rhs) in cases {
                    checked += 1;
                    if lhs != rhs {
                        failures.push(format!("{rho}: {lhs} != {rhs}"));
                    }
                }
            }
        }
    }
    out.push(Report::new(
        "cuspidal-sum-model-characters",
        format!("rank<={bound}"),
        format!("{checked} identities hold"),
        if failures.is_empty() { format!("{checked} identities hold") } else { failures.join("; ") },
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::enumerate_series;

    fn sym(s: &str) -> Symbol {
        s.parse().unwrap()
    }

    #[test]
    fn unipotent_cuspidal_examples() {
        let sp2 = unipotent_cuspidal(SeriesTag::new(SeriesFamily::Sp, 2));
        assert_eq!((sp2.count, sp2.characters), (1, vec![sym("|2,1,0")]));
        let om1 = unipotent_cuspidal(SeriesTag::new(SeriesFamily::OEvenMinus, 1));
        assert_eq!(om1.characters, vec![sym("1,0|"), sym("|1,0")]);
        assert_eq!(unipotent_cuspidal(SeriesTag::new(SeriesFamily::OEvenPlus, 2)).count, 0);
        assert_eq!(unipotent_cuspidal(SeriesTag::new(SeriesFamily::OEvenPlus, 0)).count, 1);
    }

    #[test]
    fn closed_form_matches_filtered_enumeration() {
        for rank in 0..=8 {
            for family in [SeriesFamily::Sp, SeriesFamily::OEvenPlus, SeriesFamily::OEvenMinus] {
                let tag = SeriesTag::new(family, rank);
                let mut filtered: Vec<Symbol> =
                    enumerate_series(tag).unwrap().into_iter().filter(Symbol::is_cuspidal).collect();
                let mut closed = unipotent_cuspidal(tag).characters;
                filtered.sort();
                closed.sort();
                assert_eq!(closed, filtered, "{tag}");
            }
        }
    }

    #[test]
    fn pseudo_unipotent_examples() {
        let one = pseudo_unipotent_cuspidal_sp(1);
        let firsts: Vec<Symbol> = one.characters.iter().map(|c| c.symbols().unwrap().0.clone()).collect();
        assert_eq!(firsts, vec![sym("1,0|"), sym("|1,0")]);
        assert_eq!(pseudo_unipotent_cuspidal_sp(2).count, 0);
        let four = pseudo_unipotent_cuspidal_sp(4);
        assert_eq!(four.characters[0].symbols().unwrap().0, &sym("3,2,1,0|"));
        assert_eq!(pseudo_unipotent_cuspidal_sp(0).count, 1);
    }

    #[test]
    fn first_occurrence_checks_small() {
        let cache = SeriesCache::new();
        for m in 1..=2 {
            let r = pseudo_unipotent_even_first_occurrence(&cache, m).unwrap();
            assert!(r.pass, "{r:?}");
            let r = pseudo_unipotent_odd_first_occurrence(&cache, m).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(pseudo_unipotent_count(m).pass);
        }
        for m in 0..=2 {
            let r = unipotent_cuspidal_odd_first_occurrence(&cache, m).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn cuspidal_sums_small() {
        let cache = SeriesCache::new();
        for m in 0..=2 {
            for r in cuspidal_preservation_sums(&cache, m).unwrap() {
                assert!(r.pass, "{r:?}");
            }
        }
    }
}
