use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fafft::bench::bench_method;
use fafft::circuit::{gen_mul_circuit, verify_slp, StraightLineProgram};
use fafft::gf2x::{mul_fafft_with, mul_karatsuba, mul_schoolbook};
use fafft::{to_novel, BinaryPoly, Field, FieldParams, Method, OpCounters};

/// GF(2)[x] multiplication with the Frobenius additive FFT.
#[derive(Parser)]
#[command(name = "fafft", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Tower height K; the field is GF(2^(2^K)).
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=6))]
    k: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiply two polynomials given in hex.
    Mul(MulArgs),
    /// Cross-section evaluations of a polynomial.
    Faft(FaftArgs),
    /// Time the multipliers over a range of sizes.
    Bench(BenchArgs),
    /// Write a multiplier circuit as a straight-line program.
    GenCircuit(GenArgs),
    /// Check a straight-line program against schoolbook multiplication.
    VerifyCircuit(VerifyArgs),
    /// Run the built-in consistency checks.
    Selftest,
}

#[derive(Args)]
struct MulArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, default_value = "fafft")]
    method: Method,
    /// Read operands as 0/1 strings (highest degree first).
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct FaftArgs {
    #[arg(long)]
    poly: Option<String>,
    /// log2 of the transform length.
    #[arg(long)]
    m: Option<u32>,
    /// Also print the full additive transform.
    #[arg(long)]
    expand: bool,
    /// Print the twiddle table s_j(v_i) as hex rows.
    #[arg(long)]
    dump_twiddles: bool,
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    min_log: u32,
    #[arg(long, default_value_t = 16)]
    max_log: u32,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_values_t = Method::ALL)]
    methods: Vec<Method>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    no_cse: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    slp: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<fafft::Error> for Failure {
    fn from(e: fafft::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_poly(s: &str, bits: bool) -> Result<BinaryPoly, Failure> {
    let p = if bits { BinaryPoly::from_bit_string(s) } else { BinaryPoly::from_hex(s) };
    p.map_err(|e| Failure::Usage(e.to_string()))
}

fn mul(field: &Field, args: MulArgs) -> Result<(), Failure> {
    let a = parse_poly(&args.a, args.bits)?;
    let b = parse_poly(&args.b, args.bits)?;
    let c = match args.method {
        Method::Fafft => mul_fafft_with(field, &a, &b, &mut OpCounters::new())?,
        Method::Schoolbook => mul_schoolbook(&a, &b),
        Method::Karatsuba => mul_karatsuba(&a, &b),
    };
    println!("{}", if args.bits { c.to_bit_string() } else { c.to_hex() });
    Ok(())
}

fn faft(field: &Field, args: FaftArgs) -> Result<(), Failure> {
    if args.dump_twiddles {
        print!("{}", field.twiddle_table().dump());
    }
    let Some(poly) = args.poly else {
        return if args.dump_twiddles { Ok(()) } else { Err(Failure::Usage("--poly is required".into())) };
    };
    let p = parse_poly(&poly, args.bits)?;
    let m = match args.m {
        Some(m) => m,
        None => p.len().max(1).next_power_of_two().trailing_zeros(),
    };
    if m > field.degree() {
        return Err(Failure::Usage(format!("--m {m} exceeds the field degree {}", field.degree())));
    }
    let r = field.fafft(&to_novel(&p, 1 << m)?, &mut OpCounters::new())?;
    for (pt, v) in &r.entries {
        println!("sigma_index={} level={} orbit={} value={}", pt.index(), pt.level, pt.orbit_size, v.to_hex());
    }
    if args.expand {
        for (i, v) in field.expand_to_full_aft(&r)?.iter().enumerate() {
            println!("aft_index={i} value={}", v.to_hex());
        }
    }
    Ok(())
}

fn bench(field: &Field, seed: u64, args: BenchArgs) -> Result<(), Failure> {
    if args.min_log < 1 || args.min_log > args.max_log {
        return Err(Failure::Usage("need 1 <= --min-log <= --max-log".into()));
    }
    let mut csv = String::from("method,log_bits,seconds_median\n");
    println!("{:<11} {:>8} {:>5} {:>14} {:>14} {:>14}", "method", "log_bits", "reps", "seconds", "mults", "adds");
    for log_bits in args.min_log..=args.max_log {
        for &method in &args.methods {
            let r = bench_method(field, method, log_bits, args.reps, seed)?;
            println!(
                "{:<11} {:>8} {:>5} {:>14.6e} {:>14} {:>14}",
                r.method.name(),
                r.log_bits,
                r.reps,
                r.seconds_median,
                r.weighted_mults,
                r.weighted_adds
            );
            csv.push_str(&format!("{},{},{:.9}\n", r.method, r.log_bits, r.seconds_median));
        }
    }
    if let Some(path) = args.csv {
        fs::write(&path, csv).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn gen_circuit(args: GenArgs) -> Result<(), Failure> {
    let p = gen_mul_circuit(args.n, !args.no_cse)?;
    fs::write(&args.out, p.to_text()).map_err(|e| Failure::Usage(format!("{}: {e}", args.out.display())))?;
    println!("and={} xor={} total={}", p.and_count(), p.xor_count(), p.total());
    Ok(())
}

fn verify_circuit(seed: u64, args: VerifyArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.slp).map_err(|e| Failure::Usage(format!("{}: {e}", args.slp.display())))?;
    let p = StraightLineProgram::parse(&text).map_err(|e| Failure::Check(e.to_string()))?;
    let r = verify_slp(&p, args.trials, 1 << 16, seed);
    println!(
        "pass={} trials={} exhaustive={} and={} xor={} total={}",
        r.pass,
        r.trials,
        r.exhaustive,
        r.and_count,
        r.xor_count,
        r.and_count + r.xor_count
    );
    match r.counterexample {
        _ if r.pass => Ok(()),
        Some((a, b)) => Err(Failure::Check(format!("mismatch for a={a} b={b}"))),
        None => Err(Failure::Check("program could not be evaluated".into())),
    }
}

fn selftest(field: &Field, seed: u64) -> Result<(), Failure> {
    let mut failed = false;
    for (name, outcome) in fafft::selftest::run(field, seed) {
        match outcome {
            Ok(()) => println!("ok   {name}"),
            Err(e) => {
                failed = true;
                println!("FAIL {name}: {e}");
            }
        }
    }
    if failed {
        Err(Failure::Check("selftest failed".into()))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field = Field::new(FieldParams::new(cli.k).expect("range checked by clap"));
    let outcome = match cli.cmd {
        Cmd::Mul(a) => mul(&field, a),
        Cmd::Faft(a) => faft(&field, a),
        Cmd::Bench(a) => bench(&field, cli.seed, a),
        Cmd::GenCircuit(a) => gen_circuit(a),
        Cmd::VerifyCircuit(a) => verify_circuit(cli.seed, a),
        Cmd::Selftest => selftest(&field, cli.seed),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
