//! Tokenization, joint alphabets, symbol strings and Parikh-vector statistics.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{EditError, Result};

/// Symbol id in `[0..sigma)`.
pub type Symbol = u32;

/// Truncation preset matching the 32 kB prefixes used for the natural-text
/// experiments.
pub const TRUNCATE_32K: usize = 32 * 1024;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenizeMode {
    /// Maximal runs of alphanumeric characters; everything else separates.
    #[default]
    Words,
    /// One token per byte.
    Bytes,
}

impl std::str::FromStr for TokenizeMode {
    type Err = EditError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "words" => Ok(TokenizeMode::Words),
            "bytes" => Ok(TokenizeMode::Bytes),
            _ => Err(EditError::Parse(format!("unknown tokenize mode {s:?}"))),
        }
    }
}

/// Splits `text` into tokens borrowed from it.
///
/// Truncation happens before tokenization. In words mode a multi-byte
/// character cut by the truncation point is dropped rather than reported
/// as a decoding error.
pub fn tokenize(text: &[u8], mode: TokenizeMode, truncate_bytes: Option<usize>) -> Result<Vec<&[u8]>> {
    let text = match truncate_bytes {
        Some(limit) if limit < text.len() => &text[..limit],
        _ => text,
    };
    match mode {
        TokenizeMode::Bytes => Ok(text.chunks(1).collect()),
        TokenizeMode::Words => {
            let decoded = match std::str::from_utf8(text) {
                Ok(s) => s,
                // incomplete trailing sequence left by truncation
                Err(e) if e.error_len().is_none() && truncate_bytes.is_some() => {
                    std::str::from_utf8(&text[..e.valid_up_to()]).expect("valid prefix")
                }
                Err(e) => return Err(EditError::Decode { offset: e.valid_up_to() }),
            };
            Ok(decoded
                .split(|c: char| !c.is_alphanumeric())
                .filter(|w| !w.is_empty())
                .map(str::as_bytes)
                .collect())
        }
    }
}

/// Distinct tokens of a pair of texts, numbered in first-appearance order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<Box<[u8]>>,
}

impl Alphabet {
    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    pub fn token(&self, symbol: Symbol) -> Option<&[u8]> {
        self.tokens.get(symbol as usize).map(|t| &**t)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &[u8]> {
        self.tokens.iter().map(|t| &**t)
    }
}

/// A sequence of symbol ids, each smaller than `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolString {
    ids: Vec<Symbol>,
    sigma: usize,
}

impl SymbolString {
    pub fn new(ids: Vec<Symbol>, sigma: usize) -> Result<Self> {
        if let Some(&bad) = ids.iter().find(|&&id| id as usize >= sigma) {
            return Err(EditError::SymbolOutOfRange { symbol: bad as usize, sigma });
        }
        Ok(SymbolString { ids, sigma })
    }

    pub fn ids(&self) -> &[Symbol] {
        &self.ids
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn get(&self, i: usize) -> Symbol {
        self.ids[i]
    }

    /// Same ids, viewed over a (larger or equal) alphabet.
    pub fn with_sigma(&self, sigma: usize) -> Result<Self> {
        SymbolString::new(self.ids.clone(), sigma)
    }
}

/// Assigns ids over both token lists, scanning `source` then `target`.
pub fn build_alphabet<'t>(source: &[&'t [u8]], target: &[&'t [u8]]) -> (Alphabet, SymbolString, SymbolString) {
    let mut lookup: HashMap<&'t [u8], Symbol> = HashMap::new();
    let mut tokens = Vec::new();
    let mut encode = |list: &[&'t [u8]]| -> Vec<Symbol> {
        list.iter()
            .map(|&tok| {
                *lookup.entry(tok).or_insert_with(|| {
                    tokens.push(Box::<[u8]>::from(tok));
                    (tokens.len() - 1) as Symbol
                })
            })
            .collect()
    };
    let s = encode(source);
    let t = encode(target);
    let sigma = tokens.len();
    (
        Alphabet { tokens },
        SymbolString { ids: s, sigma },
        SymbolString { ids: t, sigma },
    )
}

/// Encodes a pair of byte strings one byte per symbol. Convenient in tests
/// and examples.
pub fn encode_bytes(source: &[u8], target: &[u8]) -> (SymbolString, SymbolString) {
    let s: Vec<&[u8]> = source.chunks(1).collect();
    let t: Vec<&[u8]> = target.chunks(1).collect();
    let (_, s, t) = build_alphabet(&s, &t);
    (s, t)
}

/// Per-symbol occurrence counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParikhVector(Vec<u64>);

impl ParikhVector {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        ParikhVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn sigma(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

pub fn parikh(s: &SymbolString) -> ParikhVector {
    let mut counts = vec![0u64; s.sigma()];
    for &id in s.ids() {
        counts[id as usize] += 1;
    }
    ParikhVector(counts)
}

/// Statistics comparing the Parikh vectors of a source and a target.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairStats {
    /// Sum over symbols of `n_a * m_a`.
    pub cross_sum: u64,
    /// `max_a min(n_a, m_a - n_a)`; negative when some symbol is more
    /// frequent in the source. Zero for an empty alphabet.
    pub gamma: i64,
    /// Source length restricted to symbols that occur in the target.
    pub n_prime: u64,
    /// Target length restricted to symbols that occur in the source.
    pub m_prime: u64,
}

pub fn pair_stats(source: &ParikhVector, target: &ParikhVector) -> Result<PairStats> {
    if source.sigma() != target.sigma() {
        return Err(EditError::Dimension { left: source.sigma(), right: target.sigma() });
    }
    let mut stats = PairStats { gamma: i64::MIN, ..PairStats::default() };
    for (&n_a, &m_a) in source.counts().iter().zip(target.counts()) {
        stats.cross_sum += n_a * m_a;
        let (n_a, m_a) = (n_a as i64, m_a as i64);
        stats.gamma = stats.gamma.max(n_a.min(m_a - n_a));
        if m_a > 0 {
            stats.n_prime += n_a as u64;
        }
        if n_a > 0 {
            stats.m_prime += m_a as u64;
        }
    }
    if source.sigma() == 0 {
        stats.gamma = 0;
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn words(text: &str) -> Vec<&str> {
        tokenize(text.as_bytes(), TokenizeMode::Words, None)
            .unwrap()
            .into_iter()
            .map(|t| std::str::from_utf8(t).unwrap())
            .collect()
    }

    #[test]
    fn tokenize_words() {
        assert_eq!(words("to be, or not"), ["to", "be", "or", "not"]);
        assert!(words("").is_empty());
        assert_eq!(words("  Straße--über\n42x"), ["Straße", "über", "42x"]);
    }

    #[test]
    fn tokenize_truncates_first() {
        let toks = tokenize(b"ab a", TokenizeMode::Words, Some(2)).unwrap();
        assert_eq!(toks, [b"ab"]);
        let toks = tokenize(b"abc", TokenizeMode::Bytes, Some(2)).unwrap();
        assert_eq!(toks, [b"a", b"b"]);
    }

    #[test]
    fn tokenize_drops_char_split_by_truncation() {
        // "aü" is 61 c3 bc
        let toks = tokenize("aü".as_bytes(), TokenizeMode::Words, Some(2)).unwrap();
        assert_eq!(toks, [b"a"]);
    }

    #[test]
    fn tokenize_reports_bad_utf8_offset() {
        let err = tokenize(b"ok \xff rest", TokenizeMode::Words, None).unwrap_err();
        assert!(matches!(err, EditError::Decode { offset: 3 }));
        // bytes mode accepts anything
        assert_eq!(tokenize(b"\xff\xfe", TokenizeMode::Bytes, None).unwrap().len(), 2);
    }

    #[test]
    fn alphabet_first_appearance() {
        let (alpha, s, t) = build_alphabet(&[b"a", b"b"], &[b"b", b"c"]);
        assert_eq!(alpha.size(), 3);
        assert_eq!(s.ids(), [0, 1]);
        assert_eq!(t.ids(), [1, 2]);
        assert_eq!(alpha.token(2), Some(&b"c"[..]));

        let (alpha, s, t) = build_alphabet(&[], &[b"x"]);
        assert_eq!((alpha.size(), s.ids(), t.ids()), (1, &[][..], &[0][..]));

        let (alpha, s, t) = build_alphabet(&[b"a", b"a"], &[b"a"]);
        assert_eq!((alpha.size(), s.ids(), t.ids()), (1, &[0, 0][..], &[0][..]));
    }

    #[test]
    fn symbol_string_rejects_out_of_range() {
        assert!(SymbolString::new(vec![0, 2], 2).is_err());
        assert!(SymbolString::new(vec![0, 1], 2).is_ok());
    }

    #[test]
    fn parikh_counts() {
        let p = parikh(&SymbolString::new(vec![0, 1, 2, 0], 3).unwrap());
        assert_eq!(p.counts(), [2, 1, 1]);
        assert_eq!(parikh(&SymbolString::new(vec![], 2).unwrap()).counts(), [0, 0]);
        assert_eq!(parikh(&SymbolString::new(vec![1, 1, 1], 2).unwrap()).counts(), [0, 3]);
    }

    #[test]
    fn pair_stats_examples() {
        let pv = |c: &[u64]| ParikhVector::from_counts(c.to_vec());
        let st = pair_stats(&pv(&[1, 1]), &pv(&[1, 1])).unwrap();
        assert_eq!(st, PairStats { cross_sum: 2, gamma: 0, n_prime: 2, m_prime: 2 });

        let st = pair_stats(&pv(&[2, 0]), &pv(&[0, 3])).unwrap();
        assert_eq!((st.cross_sum, st.n_prime, st.m_prime), (0, 0, 0));
        // min(2, -2) = -2 and min(0, 3) = 0
        assert_eq!(st.gamma, 0);

        let st = pair_stats(&pv(&[1, 2, 1]), &pv(&[2, 2, 0])).unwrap();
        assert_eq!(st.cross_sum, 6);
        assert_eq!(st.gamma, 1);
        assert_eq!((st.n_prime, st.m_prime), (3, 4));

        assert!(matches!(
            pair_stats(&pv(&[1]), &pv(&[1, 2])),
            Err(EditError::Dimension { left: 1, right: 2 })
        ));
    }

    fn symbol_pair() -> impl Strategy<Value = (SymbolString, SymbolString)> {
        (1usize..6).prop_flat_map(|sigma| {
            let sym = 0..sigma as Symbol;
            (
                prop::collection::vec(sym.clone(), 0..50),
                prop::collection::vec(sym, 0..50),
            )
                .prop_map(move |(a, b)| {
                    (SymbolString::new(a, sigma).unwrap(), SymbolString::new(b, sigma).unwrap())
                })
        })
    }

    proptest! {
        #[test]
        fn parikh_sums_to_length((s, _t) in symbol_pair()) {
            prop_assert_eq!(parikh(&s).total(), s.len() as u64);
        }

        #[test]
        fn cross_sum_counts_equal_position_pairs((s, t) in symbol_pair()) {
            let brute = s.ids().iter()
                .flat_map(|a| t.ids().iter().map(move |b| (a, b)))
                .filter(|(a, b)| a == b)
                .count() as u64;
            let st = pair_stats(&parikh(&s), &parikh(&t)).unwrap();
            prop_assert_eq!(st.cross_sum, brute);
            prop_assert!(st.cross_sum <= (s.len() * t.len()) as u64);
            prop_assert!(st.n_prime <= s.len() as u64);
            prop_assert!(st.m_prime <= t.len() as u64);
        }

        #[test]
        fn full_alphabet_means_no_projection(ids in prop::collection::vec(0u32..4, 0..30)) {
            let mut full: Vec<Symbol> = (0..4).collect();
            full.extend(&ids);
            let s = SymbolString::new(full.clone(), 4).unwrap();
            let mut rev = full;
            rev.reverse();
            let t = SymbolString::new(rev, 4).unwrap();
            let st = pair_stats(&parikh(&s), &parikh(&t)).unwrap();
            prop_assert_eq!(st.n_prime, s.len() as u64);
            prop_assert_eq!(st.m_prime, t.len() as u64);
        }
    }
}
