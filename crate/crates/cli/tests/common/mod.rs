//! Shared driver for tests that run the `adcode` binary.

#![allow(dead_code)]

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

pub struct Run {
    pub status: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

/// Runs `adcode` with `args`, feeding `stdin`. `@name` arguments are fixture paths.
pub fn adcode(args: &[&str], stdin: &[u8]) -> Run {
    let args: Vec<String> = args
        .iter()
        .map(|a| a.strip_prefix('@').map_or_else(|| a.to_string(), fixture))
        .collect();
    let mut child = Command::new(env!("CARGO_BIN_EXE_adcode"))
        .args(&args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("adcode starts");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        status: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub struct Golden {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: &'static str,
    pub status: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], stdin: &'static str) -> Golden {
    Golden { name, args, stdin, status: 0 }
}

pub const GOLDEN: &[Golden] = &[
    case("ex1_encode", &["encode", "--scheme", "table", "--table", "@ex1.act"], "abaa\n"),
    case("ex1_decode", &["decode", "--scheme", "table", "--table", "@ex1.act"], "001010\n"),
    case("ex2_encode", &["encode", "--scheme", "table", "--table", "@ex2.act"], "abacca\n"),
    case("ex2_decode", &["decode", "--scheme", "table", "--table", "@ex2.act"], "0010111110\n"),
    case("ex4_encode", &["encode", "--scheme", "huffman", "--alphabet", "abcd"], "bcabd\n"),
    case("ex4_decode", &["decode", "--scheme", "huffman", "--alphabet", "abcd"], "0110001100\n"),
    case("ex4_trace", &["trace", "--scheme", "huffman", "--alphabet", "abcd"], "bcabd\n"),
    case("ex5_trace", &["trace", "--scheme", "lz", "--alphabet", "0123456789abc"], "bcc7ba\n"),
    case("ex6_encode", &["encode", "--scheme", "conv", "--table", "@ex6.conv"], "0101\n"),
    case("ex6_decode", &["decode", "--scheme", "conv", "--table", "@ex6.conv"], "00011010\n"),
    case("ex7_encrypt", &["encrypt", "--key", "@ex7.key"], "001\n"),
    case("ex7_decrypt", &["decrypt", "--key", "@ex7.key"], "101\n"),
    case("keyspace_none_100", &["keyspace", "--public", "none", "--m", "100"], ""),
    case("keyspace_m_100", &["keyspace", "--public", "m", "--m", "100"], ""),
    case("ex8_encode", &["encode", "--scheme", "pq", "--table", "@ex8.pqt"], "ababa\n"),
    case("ex8_decode", &["decode", "--scheme", "pq", "--table", "@ex8.pqt"], "11111101111\n"),
    case("ex9_encode", &["encode", "--scheme", "atv", "--table", "@ex9.atv"], "abaa\n"),
    case("ex9_decode", &["decode", "--scheme", "atv", "--table", "@ex9.atv"], "0110000000\n"),
    case("tv_encode", &["encode", "--scheme", "tv", "--table", "@ex9.tv"], "ab\n"),
    Golden { name: "bad_certify", args: &["certify", "--table", "@bad.act"], stdin: "", status: 13 },
    Golden { name: "bad_oracle", args: &["oracle", "--table", "@bad.act", "--max-len", "8"], stdin: "", status: 30 },
    case("empty_encode", &["encode", "--scheme", "table", "--table", "@ex1.act"], ""),
];

/// Runs one golden case; `Err` describes the mismatch.
pub fn check(g: &Golden) -> Result<(), String> {
    let expected = std::fs::read(fixtures().join("golden").join(format!("{}.out", g.name)))
        .map_err(|e| format!("{}: missing golden file: {e}", g.name))?;
    let run = adcode(g.args, g.stdin.as_bytes());
    if run.status != g.status {
        return Err(format!("{}: exit {} (expected {}), stderr: {}", g.name, run.status, g.status, run.stderr));
    }
    if run.stdout != expected {
        return Err(format!(
            "{}: stdout {:?}, expected {:?}",
            g.name,
            String::from_utf8_lossy(&run.stdout),
            String::from_utf8_lossy(&expected)
        ));
    }
    Ok(())
}
