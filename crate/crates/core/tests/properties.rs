//! Randomized and exhaustive properties, each checked against an independent
//! reference where one exists.

use adaptive_codes::adaptive::random_certified_table;
use adaptive_codes::conv::{as_adaptive_code, conv_encode, ConvCodeSpec};
use adaptive_codes::crypto::{brute_force_attack, decrypt, encrypt, keyspace_bound, KeyMaterial, KeyVisibility, PublicValues};
use adaptive_codes::extensions::{decode_atv, decode_pq, encode_atv, encode_pq, encode_tv, AtvRule, PqCodeTable, TimeVaryingRule};
use adaptive_codes::lz::{self, lz_decode, lz_encode, lz_parse};
use adaptive_codes::oracle::{injectivity_oracle, DEFAULT_BUDGET};
use adaptive_codes::{huffman, Alphabet, Bitstring, ContextCodeTable, HuffmanTree, SymString, Symbol};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alphabet(k: usize) -> Alphabet {
    Alphabet::new("abcdefgh".chars().take(k)).unwrap()
}

fn random_string<R: Rng>(alphabet: &Alphabet, len: usize, rng: &mut R) -> SymString {
    (0..len).map(|_| *alphabet.symbols().choose(rng).unwrap()).collect()
}

fn random_bits<R: Rng>(len: usize, rng: &mut R) -> Bitstring {
    (0..len).map(|_| rng.gen::<bool>()).collect()
}

#[test]
fn certified_tables_are_injective() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for k in 2..=3 {
        for n in 1..=2 {
            for _ in 0..15 {
                let table = random_certified_table(&alphabet(k), n, &mut rng).unwrap();
                assert!(table.verify().is_certified());
                let verdict = injectivity_oracle(|x| table.encode(x), table.alphabet(), 8, DEFAULT_BUDGET).unwrap();
                assert!(verdict.is_pass(), "{verdict:?}\n{}", table.to_text());
                checked += 1;
            }
        }
    }
    assert!(checked >= 50);
}

#[test]
fn oracle_finds_collision_in_non_prefix_column() {
    // Column λ holds 0 and 01, so "b" and "aa" both encode to 01.
    let table = ContextCodeTable::from_rows(
        "ab".parse().unwrap(),
        1,
        &[('a', "-", "0"), ('b', "-", "01"), ('a', "a", "1"), ('b', "a", "0"), ('a', "b", "1"), ('b', "b", "0")],
    )
    .unwrap();
    assert!(!table.verify().is_certified());
    let verdict = injectivity_oracle(|x| table.encode(x), table.alphabet(), 8, DEFAULT_BUDGET).unwrap();
    assert!(!verdict.is_pass());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_round_trip(seed in any::<u64>(), k in 1usize..=4, n in 1usize..=3, len in 0usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_certified_table(&alphabet(k), n, &mut rng).unwrap();
        let x = random_string(table.alphabet(), len, &mut rng);
        let y = table.encode(&x).unwrap();
        prop_assert_eq!(table.decode(&y).unwrap(), x);
    }

    #[test]
    fn table_text_round_trip(seed in any::<u64>(), k in 1usize..=4, n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_certified_table(&alphabet(k), n, &mut rng).unwrap();
        prop_assert_eq!(ContextCodeTable::parse(&table.to_text()).unwrap(), table);
    }

    #[test]
    fn huffman_round_trip(seed in any::<u64>(), k in 2usize..=8, len in 0usize..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sigma = alphabet(k);
        let w = random_string(&sigma, len, &mut rng);
        let y = huffman::encode_ah(&sigma, &w).unwrap();
        prop_assert_eq!(huffman::decode_ah(&sigma, &y).unwrap(), w);
    }

    #[test]
    fn pq_with_one_symbol_blocks_is_an_adaptive_code(seed in any::<u64>(), p in 1usize..=3, len in 0usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let table = random_certified_table(&alphabet(3), p, &mut rng).unwrap();
        let pq = reshape(&table);
        let x = random_string(table.alphabet(), len, &mut rng);
        let y = encode_pq(&pq, &x).unwrap();
        prop_assert_eq!(&y, &table.encode(&x).unwrap());
        prop_assert_eq!(decode_pq(&pq, &y).unwrap(), x);
    }
}

/// Sibling property after every update of a long random run, compared against
/// a direct check of the two conditions on the node list.
#[test]
fn sibling_property_under_fuzzing() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut updates = 0;
    while updates < 10_000 {
        let sigma = alphabet(rng.gen_range(2..=8));
        let mut tree = HuffmanTree::initial(&sigma).unwrap();
        for _ in 0..500 {
            let s = *sigma.symbols().choose(&mut rng).unwrap();
            tree.update(s).unwrap();
            updates += 1;
            let weights = tree.ordered_weights();
            assert!(weights.windows(2).all(|w| w[0] <= w[1]), "order broken: {weights:?}");
            tree.check_invariants().unwrap();
            assert_eq!(tree.root_weight(), *weights.last().unwrap());
        }
    }
}

/// Every symbol's code walks the tree to that symbol's leaf.
#[test]
fn huffman_codes_decode_to_their_symbol() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let sigma = alphabet(rng.gen_range(2..=8));
        let w = random_string(&sigma, rng.gen_range(0..60), &mut rng);
        let tree = HuffmanTree::after(&sigma, &w).unwrap();
        for &s in sigma.symbols() {
            let code = tree.code_of(s).unwrap();
            assert_eq!(tree.walk(&code), Some((s, code.len())));
        }
        assert_eq!(tree.root_weight(), (sigma.len() + w.len()) as u64);
    }
}

/// Reference parser: quadratic search for the shortest unseen prefix.
fn reference_parse(w: &[Symbol]) -> Vec<String> {
    let mut seen: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i + 1;
        while j < w.len() && seen.iter().any(|b| b.chars().eq(w[i..j].iter().copied())) {
            j += 1;
        }
        seen.push(w[i..j].iter().collect());
        i = j;
    }
    seen
}

#[test]
fn lz_round_trip_and_parse_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sigma1 = Alphabet::with_digits(&"abc".parse().unwrap()).unwrap();
    for round in 0..1000 {
        let sigma = if round % 2 == 0 { sigma1.clone() } else { alphabet(rng.gen_range(1..=4)) };
        let w = random_string(&sigma, rng.gen_range(0..=128), &mut rng);
        let blocks: Vec<String> = lz_parse(&w).iter().map(ToString::to_string).collect();
        assert_eq!(blocks, reference_parse(&w));
        let y = lz_encode(&sigma, &w).unwrap();
        assert_eq!(lz_decode(&sigma, &y).unwrap(), w);
    }
}

#[test]
fn lz_as_ga_code_matches_stream() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sigma: Alphabet = "abc".parse().unwrap();
    let sigma1 = Alphabet::with_digits(&sigma).unwrap();
    for _ in 0..200 {
        let marker = *sigma.symbols().choose(&mut rng).unwrap();
        let code = lz::as_ga(&sigma, marker).unwrap();
        let w = random_string(&sigma1, rng.gen_range(0..=24), &mut rng);
        assert_eq!(code.encode(&w).unwrap(), lz_encode(&sigma1, &w).unwrap(), "w = {w}");
    }
}

/// Output `j` at time `t` is `Σ_k P_j.k · x_{t-k+1}`, with `x_i = 0` for `i < 1`.
fn reference_conv(polys: &[Bitstring], x: &[bool]) -> Bitstring {
    let mut out = Bitstring::new();
    for t in 0..x.len() {
        for p in polys {
            let bit = (0..p.len()).filter(|&k| p[k] && k <= t).fold(false, |acc, k| acc ^ x[t - k]);
            out.push(bit);
        }
    }
    out
}

fn random_spec<R: Rng>(rng: &mut R, tap_current: bool) -> ConvCodeSpec {
    let n = rng.gen_range(1..=3);
    let m = rng.gen_range(1..=4);
    let mut polys: Vec<Bitstring> = (0..n)
        .map(|_| loop {
            let p = random_bits(m + 1, rng);
            if p.iter().any(|&b| b) {
                break p;
            }
        })
        .collect();
    if tap_current {
        let j = rng.gen_range(0..n);
        let mut p = polys[j].bits().to_vec();
        p[0] = true;
        polys[j] = Bitstring::from_bits(p);
    }
    ConvCodeSpec::new(n, 1, m, polys, None).unwrap()
}

#[test]
fn conv_codes_against_reference_and_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let binary = Alphabet::binary();
    for _ in 0..40 {
        let spec = random_spec(&mut rng, true);
        let code = as_adaptive_code(&spec).unwrap();
        let table = code.to_table();
        assert!(table.verify().is_certified());
        for x in binary.strings_up_to(10) {
            let bits = Bitstring::from_symbols(&x).unwrap();
            let y = conv_encode(&spec, &bits);
            assert_eq!(y, reference_conv(spec.polys(), &bits));
            assert_eq!(table.encode(&x).unwrap(), y);
        }
        let x = random_bits(64, &mut rng);
        assert_eq!(code.decode(&conv_encode(&spec, &x)).unwrap(), x);
    }
}

#[test]
fn conv_codes_are_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let spec = random_spec(&mut rng, false);
        let len = rng.gen_range(0..40);
        let (a, b) = (random_bits(len, &mut rng), random_bits(len, &mut rng));
        let sum = a.xor(&b).unwrap();
        assert_eq!(conv_encode(&spec, &sum), conv_encode(&spec, &a).xor(&conv_encode(&spec, &b)).unwrap());
    }
}

fn random_key<R: Rng>(m: usize, rng: &mut R) -> KeyMaterial {
    let mut p = random_bits(m + 1, rng).into_bits();
    p[0] = true;
    KeyMaterial::new(Bitstring::from_bits(p), random_bits(m, rng)).unwrap()
}

/// `y_t = x_t ⊕ Σ_{k≥2} P.k · r_{k-1}`, where `r_i` is `x_{t-i}` or `Q.(i - t + 1)` before the start.
fn reference_encrypt(key: &KeyMaterial, x: &[bool]) -> Bitstring {
    let (p, q) = (key.p(), key.q());
    (0..x.len())
        .map(|t| {
            (1..p.len()).filter(|&k| p[k]).fold(x[t], |acc, k| {
                let r = if k <= t { x[t - k] } else { q[k - t - 1] };
                acc ^ r
            })
        })
        .collect()
}

#[test]
fn cipher_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10_000 {
        let key = random_key(rng.gen_range(1..=16), &mut rng);
        let x = random_bits(rng.gen_range(0..48), &mut rng);
        let y = encrypt(&key, &x);
        assert_eq!(y, reference_encrypt(&key, &x));
        assert_eq!(decrypt(&key, &y), x);
    }
}

#[test]
fn cipher_round_trips_exhaustively() {
    let binary = Alphabet::binary();
    let strings: Vec<Bitstring> = binary.strings_up_to(6).map(|s| Bitstring::from_symbols(&s).unwrap()).collect();
    for m in 1..=3u32 {
        for p in 0..1u64 << m {
            for q in 0..1u64 << m {
                let p = Bitstring::from_bits([true]).concat(&Bitstring::from_uint(p, m));
                let key = KeyMaterial::new(p, Bitstring::from_uint(q, m)).unwrap();
                for x in &strings {
                    assert_eq!(&decrypt(&key, &encrypt(&key, x)), x);
                }
            }
        }
    }
}

#[test]
fn attack_recovers_true_key() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for m_max in 1..=3 {
        for _ in 0..20 {
            let key = random_key(rng.gen_range(1..=m_max), &mut rng);
            let x = random_bits(rng.gen_range(1..24), &mut rng);
            let y = encrypt(&key, &x);
            let report = brute_force_attack(&y, &x, KeyVisibility::AllPrivate, &PublicValues::default(), m_max, 1 << 20).unwrap();
            let bound = keyspace_bound(KeyVisibility::AllPrivate, m_max);
            assert!(BigUint::from(report.examined) <= bound);
            assert_eq!(report.examined, (4u64.pow(m_max as u32 + 1) - 4) / 3);
            assert!(report.keys.contains(&key));
            assert!(report.keys.iter().all(|k| encrypt(k, &x) == y));
        }
    }
}

#[test]
fn attack_partitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let m = rng.gen_range(1..=6);
        let key = random_key(m, &mut rng);
        let x = random_bits(32, &mut rng);
        let y = encrypt(&key, &x);
        let cases = [
            (KeyVisibility::MPublic, PublicValues { m: Some(m), ..Default::default() }),
            (KeyVisibility::PPublic, PublicValues { p: Some(key.p().clone()), ..Default::default() }),
            (KeyVisibility::QPublic, PublicValues { q: Some(key.q().clone()), ..Default::default() }),
        ];
        for (vis, public) in cases {
            let report = brute_force_attack(&y, &x, vis, &public, 0, 1 << 20).unwrap();
            assert_eq!(BigUint::from(report.examined), keyspace_bound(vis, m));
            assert!(report.keys.contains(&key), "{vis}");
        }
    }
}

/// The same codeword map, one-symbol blocks.
fn reshape(table: &ContextCodeTable) -> PqCodeTable {
    let mut pq = PqCodeTable::new(table.alphabet().clone(), table.order(), 1).unwrap();
    for (s, u, c) in table.entries() {
        pq.insert(SymString::from(vec![s]), u.clone(), c.clone()).unwrap();
    }
    pq
}

#[test]
fn pq_one_symbol_blocks_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for p in 1..=3 {
        let table = random_certified_table(&alphabet(2), p, &mut rng).unwrap();
        let pq = reshape(&table);
        for x in table.alphabet().strings_up_to(8) {
            assert_eq!(encode_pq(&pq, &x).unwrap(), table.encode(&x).unwrap());
        }
    }
}

#[test]
fn pq_without_context_is_sliding_block_coding() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let sigma = alphabet(2);
    for q in 1..=3 {
        let mut pq = PqCodeTable::new(sigma.clone(), 0, q).unwrap();
        let words: Vec<(SymString, Bitstring)> = sigma
            .strings_of_len(q)
            .map(|b| {
                let len = rng.gen_range(1..5);
                (b, random_bits(len, &mut rng))
            })
            .collect();
        for (b, w) in &words {
            pq.insert(b.clone(), SymString::new(), w.clone()).unwrap();
        }
        for _ in 0..50 {
            let x = random_string(&sigma, rng.gen_range(q..20), &mut rng);
            let mut expected = Bitstring::new();
            for window in x.windows(q) {
                expected.append(&words.iter().find(|(b, _)| &b[..] == window).unwrap().1);
            }
            assert_eq!(encode_pq(&pq, &x).unwrap(), expected);
        }
    }
}

#[test]
fn position_independent_atv_is_an_adaptive_code() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let table = random_certified_table(&alphabet(3), n, &mut rng).unwrap();
        let lookup = table.clone();
        let rule = AtvRule::new(table.alphabet().clone(), n, None, move |s, u, _| lookup.get(s, u).cloned());
        for _ in 0..50 {
            let x = random_string(table.alphabet(), rng.gen_range(0..30), &mut rng);
            let y = encode_atv(&rule, &x).unwrap();
            assert_eq!(y, table.encode(&x).unwrap());
            assert_eq!(decode_atv(&rule, &y).unwrap(), x);
        }
    }
}

#[test]
fn position_independent_prefix_tv_is_injective() {
    let sigma = alphabet(3);
    let words: Vec<Bitstring> = ["0", "10", "11"].iter().map(|w| w.parse().unwrap()).collect();
    let lookup = sigma.clone();
    let rule = TimeVaryingRule::new(sigma.clone(), None, move |s, _| lookup.index_of(s).map(|i| words[i].clone()));
    let verdict = injectivity_oracle(|x| encode_tv(&rule, x), &sigma, 8, DEFAULT_BUDGET).unwrap();
    assert!(verdict.is_pass());
}
