//! Benchmark fixtures shared by the criterion harnesses.

use howe_core::character::{GeneralCharacter, SampleKind};
use howe_core::symbol::{enumerate_series, SeriesFamily, SeriesTag, Symbol};
use howe_core::theta::SeriesCache;
use howe_core::verify::{sample_characters, SampleConfig};

/// Every symbol of the series at ranks `0..=max_rank`.
pub fn series_symbols(family: SeriesFamily, max_rank: u32) -> Vec<Symbol> {
    (0..=max_rank).flat_map(|r| enumerate_series(SeriesTag::new(family, r)).expect("even group series")).collect()
}

/// A fixed-seed sample of characters with `dim <= 12`.
pub fn sampled_characters(cache: &SeriesCache, kind: SampleKind, count: usize) -> Vec<GeneralCharacter> {
    let config = SampleConfig { samples: count, ..SampleConfig::default() };
    sample_characters(cache, kind, &config)
}
