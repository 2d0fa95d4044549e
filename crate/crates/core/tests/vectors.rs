//! Worked examples, checked through the fixture files shipped with the repository.

use adaptive_codes::conv::{as_adaptive_code, conv_encode, ConvCodeSpec};
use adaptive_codes::crypto::{decrypt, encrypt, keyspace_bound, scientific, KeyFile, KeyVisibility};
use adaptive_codes::extensions::{decode_atv, decode_pq, decode_tv, encode_atv, encode_pq, encode_tv, PqCodeTable, RuleTable};
use adaptive_codes::lz::{block_codewords, lz_decode, lz_encode, lz_parse};
use adaptive_codes::{huffman, Alphabet, Bitstring, CodeError, ContextCodeTable, GaCode, HuffmanTree, SymString};
use adaptive_codes::oracle::{injectivity_oracle, Verdict, DEFAULT_BUDGET};
use num_bigint::BigUint;

macro_rules! fixture {
    ($name:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/", $name))
    };
}

fn bits(s: &str) -> Bitstring {
    s.parse().unwrap()
}

fn sym(s: &str) -> SymString {
    SymString::from(s)
}

#[test]
fn order_one_table() {
    let table = ContextCodeTable::parse(fixture!("ex1.act")).unwrap();
    assert!(table.verify().is_certified());
    let y = table.encode(&sym("abaa")).unwrap();
    assert_eq!(y.to_string(), "001010");
    assert_eq!(table.decode(&y).unwrap(), sym("abaa"));
}

#[test]
fn order_two_table() {
    let table = ContextCodeTable::parse(fixture!("ex2.act")).unwrap();
    assert!(table.verify().is_certified());
    assert_eq!(table.len(), 39);
    let y = table.encode(&sym("abacca")).unwrap();
    assert_eq!(y.to_string(), "0010111110");
    assert_eq!(table.decode(&y).unwrap(), sym("abacca"));
}

#[test]
fn uncertified_fixture_is_refused() {
    let table = ContextCodeTable::parse(fixture!("bad.act")).unwrap();
    let cert = table.verify();
    let witness = cert.refusal.clone().expect("column λ is not a prefix code");
    assert_eq!(witness.context, SymString::new());
    assert_eq!((witness.first.to_string(), witness.second.to_string()), ("0".into(), "01".into()));
    let y = table.encode(&sym("ab")).unwrap();
    assert!(matches!(table.decode(&y), Err(CodeError::Uncertified { .. })));
    let verdict = injectivity_oracle(|x| table.encode(x), table.alphabet(), 8, DEFAULT_BUDGET).unwrap();
    assert_eq!(verdict, Verdict::Fail { first: sym("b"), second: sym("aa") });
}

#[test]
fn ga_adapter_matches_table_exhaustively() {
    for text in [fixture!("ex1.act"), fixture!("ex2.act")] {
        let table = ContextCodeTable::parse(text).unwrap();
        let ga = GaCode::from_order_n(&table);
        for x in table.alphabet().strings_up_to(8) {
            assert_eq!(ga.encode(&x).unwrap(), table.encode(&x).unwrap(), "x = {}", x.to_token());
        }
    }
}

#[test]
fn adaptive_huffman_trace() {
    let abcd: Alphabet = "abcd".parse().unwrap();
    let w = sym("bcabd");
    let y = huffman::encode_ah(&abcd, &w).unwrap();
    assert_eq!(y.to_string(), "0110001100");
    assert_eq!(huffman::decode_ah(&abcd, &y).unwrap(), w);
    let roots: Vec<u64> = (0..=w.len())
        .map(|i| HuffmanTree::after(&abcd, &w[..i]).unwrap().root_weight())
        .collect();
    assert_eq!(roots, [4, 5, 6, 7, 8, 9]);
    assert_eq!(huffman::as_ga(&abcd).unwrap().encode(&w).unwrap(), y);
}

#[test]
fn lz_parsing_example() {
    let sigma1 = Alphabet::with_digits(&"abc".parse().unwrap()).unwrap();
    let w = sym("bcc7ba");
    let blocks: Vec<String> = lz_parse(&w).iter().map(ToString::to_string).collect();
    assert_eq!(blocks, ["b", "c", "c7", "ba"]);
    let cws = block_codewords(&sigma1, &w).unwrap();
    assert_eq!(cws.iter().map(|c| c.index_width).collect::<Vec<_>>(), [0, 1, 2, 2]);
    assert_eq!(cws.iter().map(|c| c.bits.len()).collect::<Vec<_>>(), [4, 5, 6, 6]);
    assert_eq!(cws[0].bits.to_string(), "1011");
    assert_eq!(cws[1].bits.to_string(), "01100");
    let y = lz_encode(&sigma1, &w).unwrap();
    assert_eq!(lz_decode(&sigma1, &y).unwrap(), w);
}

#[test]
fn convolutional_example() {
    let spec: ConvCodeSpec = fixture!("ex6.conv").parse().unwrap();
    let y = conv_encode(&spec, &bits("0101"));
    assert_eq!(y.to_string(), "00011010");
    let code = as_adaptive_code(&spec).unwrap();
    assert_eq!(code.decode(&y).unwrap(), bits("0101"));
}

#[test]
fn cipher_example() {
    let kf = KeyFile::parse(fixture!("ex7.key")).unwrap();
    let key = kf.key().unwrap();
    let y = encrypt(&key, &bits("001"));
    assert_eq!(y.to_string(), "101");
    assert_eq!(decrypt(&key, &y), bits("001"));
}

#[test]
fn keyspace_table() {
    for m in 1..=30 {
        let sum: BigUint = (1..=m).map(|i| BigUint::from(4u32).pow(i as u32)).sum();
        assert_eq!(keyspace_bound(KeyVisibility::AllPrivate, m), sum);
    }
    let exact = ((BigUint::from(1u32) << 202) - 4u32) / 3u32;
    assert_eq!(keyspace_bound(KeyVisibility::AllPrivate, 100), exact);
    assert_eq!(scientific(&exact), "2.1e60");
    assert_eq!(keyspace_bound(KeyVisibility::MPublic, 100), BigUint::from(1u32) << 200);
    assert_eq!(scientific(&keyspace_bound(KeyVisibility::MPublic, 100)), "1.6e60");
    assert_eq!(scientific(&keyspace_bound(KeyVisibility::QPublic, 100)), "1.2e30");
}

#[test]
fn pq_example() {
    let table = PqCodeTable::parse(fixture!("ex8.pqt")).unwrap();
    let y = encode_pq(&table, &sym("ababa")).unwrap();
    assert_eq!(y.to_string(), "11111101111");
    assert_eq!(decode_pq(&table, &y).unwrap(), sym("ababa"));
}

#[test]
fn atv_example() {
    let rule = RuleTable::parse(fixture!("ex9.atv")).unwrap();
    assert!(rule.verify().is_certified());
    let rule = rule.to_rule();
    let y = encode_atv(&rule, &sym("abaa")).unwrap();
    assert_eq!(y.to_string(), "0110000000");
    assert_eq!(decode_atv(&rule, &y).unwrap(), sym("abaa"));
}

#[test]
fn tv_example() {
    let rule = RuleTable::parse(fixture!("ex9.tv")).unwrap().to_tv_rule().unwrap();
    let y = encode_tv(&rule, &sym("ab")).unwrap();
    assert_eq!(y.to_string(), "011");
    assert_eq!(decode_tv(&rule, &y).unwrap(), sym("ab"));
}
