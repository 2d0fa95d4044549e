//! `adcode`: encode, decode, encrypt and analyse with adaptive codes.

mod bitio;
mod exit;
mod scheme;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use adaptive_codes::adaptive::random_certified_table;
use adaptive_codes::crypto::{self, KeyFile, KeyVisibility, PublicValues, DEFAULT_ATTACK_BUDGET};
use adaptive_codes::oracle::{injectivity_oracle, Verdict, DEFAULT_BUDGET};
use adaptive_codes::{lz, Alphabet, Bitstring, CodeError, HuffmanTree, SymString};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scheme::{read_file, Scheme, SchemeKind};

#[derive(Parser)]
#[command(name = "adcode", version, about = "Adaptive codes, GA codes and convolutional ciphers")]
#[command(after_help = exit::help())]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode symbols from stdin; writes a bitstring.
    Encode(Codec),
    /// Decode a bitstring from stdin; writes symbols.
    Decode(Codec),
    /// Encrypt a bitstring from stdin with a convolutional key.
    Encrypt(Cipher),
    /// Decrypt a bitstring from stdin with a convolutional key.
    Decrypt(Cipher),
    /// Check that every context column of a code file is a prefix code.
    Certify(Certify),
    /// Print the number of keys an attacker must try.
    Keyspace(Keyspace),
    /// Known-plaintext key search; the ciphertext is read from stdin.
    Attack(Attack),
    /// Exhaustively test injectivity on all strings up to a length.
    Oracle(Oracle),
    /// Show the steps of huffman or lz encoding of stdin.
    ///
    /// huffman: one line per tree, `symbol codeword weights`, where the
    /// weights run bottom-to-top, left-to-right and end with the root; the
    /// first line is the initial tree. lz: one line per block,
    /// `block index-width codeword`.
    Trace(SchemeArgs),
}

#[derive(Args)]
struct SchemeArgs {
    #[arg(long, value_enum)]
    scheme: SchemeKind,
    /// Code file: adaptive-code, conv, pq-adaptive, time-varying or adaptive-time-varying.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Symbols in index order, e.g. `abcd`.
    #[arg(long)]
    alphabet: Option<String>,
}

#[derive(Args)]
struct Codec {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Bits as a length-prefixed byte container instead of `0`/`1` text.
    #[arg(long)]
    packed: bool,
}

#[derive(Args)]
struct Cipher {
    /// Key file: `convkey m=<m> P=<bits> Q=<bits>`.
    #[arg(long)]
    key: PathBuf,
    #[arg(long)]
    packed: bool,
}

#[derive(Args)]
struct Certify {
    #[arg(long)]
    table: PathBuf,
    /// Defaults to the kind named by the file header.
    #[arg(long, value_enum)]
    scheme: Option<SchemeKind>,
}

#[derive(Args)]
struct Keyspace {
    /// Public part of the key: none, m, P or Q.
    #[arg(long, default_value = "none")]
    public: String,
    #[arg(long)]
    m: usize,
}

#[derive(Args)]
struct Attack {
    /// The plaintext bits matching the ciphertext on stdin.
    #[arg(long)]
    plaintext: String,
    /// Key file holding the public values; `public=` selects the partition.
    #[arg(long)]
    key: Option<PathBuf>,
    /// Overrides the partition of the key file.
    #[arg(long)]
    public: Option<String>,
    /// Register count; with nothing public, the largest one searched.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_ATTACK_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct Oracle {
    #[arg(long, value_enum)]
    scheme: Option<SchemeKind>,
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    alphabet: Option<String>,
    /// Test this many random certified tables instead of a file.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Alphabet size of random tables.
    #[arg(long, default_value_t = 2)]
    symbols: usize,
    /// Order of random tables.
    #[arg(long, default_value_t = 1)]
    order: usize,
    #[arg(long, default_value_t = 8)]
    max_len: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

pub enum Failure {
    Code(CodeError),
    Io(String),
    Usage(String),
    /// Already reported on stdout.
    Status(u8),
}

impl From<CodeError> for Failure {
    fn from(err: CodeError) -> Self {
        Failure::Code(err)
    }
}

fn read_stdin() -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    io::stdin().read_to_end(&mut buf).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
    Ok(buf)
}

fn write_stdout(bytes: &[u8]) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| Failure::Io(format!("stdout: {e}")))
}

/// Text output is the token plus a newline; λ is written as nothing at all.
fn write_text(text: &str) -> Result<(), Failure> {
    if text.is_empty() {
        return Ok(());
    }
    write_stdout(format!("{text}\n").as_bytes())
}

fn read_bits(packed: bool) -> Result<Bitstring, Failure> {
    let raw = read_stdin()?;
    Ok(if packed { bitio::unpack(&raw)? } else { bitio::bits_from_text(&raw)? })
}

fn write_bits(bits: &Bitstring, packed: bool) -> Result<(), Failure> {
    if packed {
        write_stdout(&bitio::pack(bits))
    } else {
        write_text(&bits.to_string())
    }
}

fn load_scheme(args: &SchemeArgs) -> Result<Scheme, Failure> {
    Scheme::load(args.scheme, args.table.as_deref(), args.alphabet.as_deref())
}

fn encode(args: Codec) -> Result<(), Failure> {
    let scheme = load_scheme(&args.scheme)?;
    let x = bitio::symbols_from_text(&read_stdin()?)?;
    write_bits(&scheme.encode(&x)?, args.packed)
}

fn decode(args: Codec) -> Result<(), Failure> {
    let scheme = load_scheme(&args.scheme)?;
    let y = read_bits(args.packed)?;
    write_text(&scheme.decode(&y)?.to_string())
}

fn cipher(args: Cipher, forward: bool) -> Result<(), Failure> {
    let key = KeyFile::parse(&read_file(&args.key)?)?.key()?;
    let input = read_bits(args.packed)?;
    let output = if forward { crypto::encrypt(&key, &input) } else { crypto::decrypt(&key, &input) };
    write_bits(&output, args.packed)
}

fn certify(args: Certify) -> Result<(), Failure> {
    let text = read_file(&args.table)?;
    let kind = match args.scheme {
        Some(kind) => kind,
        None => Scheme::detect(&text)
            .ok_or_else(|| Failure::Usage("cannot tell the scheme from the file header; pass --scheme".into()))?,
    };
    let cert = Scheme::load(kind, Some(&args.table), None)?.certify()?;
    match &cert.refusal {
        None => write_text(&format!(
            "certified contexts={} digest={:016x}",
            cert.contexts_checked, cert.table_digest
        )),
        Some(v) => {
            write_text(&format!("refused {v}"))?;
            Err(Failure::Code(cert.into_result().unwrap_err()))
        }
    }
}

fn keyspace(args: Keyspace) -> Result<(), Failure> {
    let vis: KeyVisibility = args.public.parse()?;
    let bound = crypto::keyspace_bound(vis, args.m);
    write_text(&format!("{bound}\n≈{}", crypto::scientific(&bound)))
}

fn attack(args: Attack) -> Result<(), Failure> {
    let file = args.key.as_deref().map(read_file).transpose()?.map(|t| KeyFile::parse(&t)).transpose()?;
    let vis = match (&args.public, &file) {
        (Some(p), _) => p.parse()?,
        (None, Some(f)) => f.visibility,
        (None, None) => KeyVisibility::AllPrivate,
    };
    let mut public = file.as_ref().map(KeyFile::public_values).unwrap_or_default();
    if args.m.is_some() {
        public.m = args.m;
    }
    let m_max = public.m.unwrap_or(0);
    if vis == KeyVisibility::AllPrivate && m_max == 0 {
        return Err(Failure::Usage("a search with nothing public needs --m or a key file".into()));
    }
    // Only the values the partition declares public are handed to the search.
    let public = PublicValues {
        m: public.m.filter(|_| vis == KeyVisibility::MPublic),
        p: public.p.filter(|_| vis == KeyVisibility::PPublic),
        q: public.q.filter(|_| vis == KeyVisibility::QPublic),
    };
    let plaintext = bitio::bits_from_text(args.plaintext.as_bytes())?;
    let ciphertext = read_bits(false)?;
    let report = crypto::brute_force_attack(&ciphertext, &plaintext, vis, &public, m_max, args.budget)?;
    let mut out = String::new();
    for key in &report.keys {
        out.push_str(&format!("{key}\n"));
    }
    out.push_str(&format!("examined={} bound={} found={}", report.examined, report.bound, report.keys.len()));
    write_text(&out)
}

fn trace(args: SchemeArgs) -> Result<(), Failure> {
    let sigma = match load_scheme(&args)? {
        Scheme::Huffman(a) | Scheme::Lz(a) => a,
        _ => return Err(Failure::Usage("trace supports --scheme huffman and --scheme lz".into())),
    };
    let x = bitio::symbols_from_text(&read_stdin()?)?;
    let mut lines = Vec::new();
    if args.scheme == SchemeKind::Lz {
        for cw in lz::block_codewords(&sigma, &x)? {
            lines.push(format!("{}\t{}\t{}", cw.block, cw.index_width, cw.bits));
        }
    } else {
        let weights = |t: &HuffmanTree| t.ordered_weights().iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let mut tree = HuffmanTree::initial(&sigma)?;
        lines.push(format!("-\t-\t{}", weights(&tree)));
        sigma.check(&x)?;
        for &s in x.iter() {
            let code = tree.code_of(s)?;
            tree.update(s)?;
            lines.push(format!("{s}\t{code}\t{}", weights(&tree)));
        }
    }
    write_text(&lines.join("\n"))
}

fn verdict_line(verdict: &Verdict, encode: impl Fn(&SymString) -> Result<Bitstring, CodeError>) -> String {
    match verdict {
        Verdict::Pass { strings } => format!("PASS strings={strings}"),
        Verdict::Fail { first, second } => {
            let y = encode(first).map(|y| y.to_string()).unwrap_or_default();
            format!("FAIL {} {} -> {y}", first.to_token(), second.to_token())
        }
    }
}

fn oracle(args: Oracle) -> Result<(), Failure> {
    if let Some(count) = args.random {
        let sigma = Alphabet::new("abcdefghijklmnopqrstuvwxyz".chars().take(args.symbols))?;
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        let mut lines = Vec::new();
        let mut failed = false;
        for i in 1..=count {
            let table = random_certified_table(&sigma, args.order, &mut rng)?;
            let encode = |x: &SymString| table.encode(x);
            let verdict = injectivity_oracle(encode, &sigma, args.max_len, args.budget)?;
            failed |= !verdict.is_pass();
            lines.push(format!("table {i}: {}", verdict_line(&verdict, encode)));
        }
        write_text(&lines.join("\n"))?;
        return if failed { Err(Failure::Status(exit::ORACLE_FAIL)) } else { Ok(()) };
    }
    let kind = match (args.scheme, &args.table) {
        (Some(kind), _) => kind,
        (None, Some(path)) => Scheme::detect(&read_file(path)?)
            .ok_or_else(|| Failure::Usage("cannot tell the scheme from the file header; pass --scheme".into()))?,
        (None, None) => return Err(Failure::Usage("oracle needs --table, --scheme or --random".into())),
    };
    let scheme = Scheme::load(kind, args.table.as_deref(), args.alphabet.as_deref())?;
    let encode = |x: &SymString| scheme.encode(x);
    let verdict = injectivity_oracle(encode, &scheme.alphabet(), args.max_len, args.budget)?;
    write_text(&verdict_line(&verdict, encode))?;
    if verdict.is_pass() {
        Ok(())
    } else {
        Err(Failure::Status(exit::ORACLE_FAIL))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
        Command::Encrypt(a) => cipher(a, true),
        Command::Decrypt(a) => cipher(a, false),
        Command::Certify(a) => certify(a),
        Command::Keyspace(a) => keyspace(a),
        Command::Attack(a) => attack(a),
        Command::Oracle(a) => oracle(a),
        Command::Trace(a) => trace(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Code(err)) => {
            eprintln!("adcode: {err}");
            ExitCode::from(exit::code(&err))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("adcode: {msg}");
            ExitCode::from(exit::IO)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("adcode: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Status(code)) => ExitCode::from(code),
    }
}
