mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lspac::certificate::WitnessValue;
use lspac::complements::{build_pair, d_k, profile_csv, theorem_b_check, ModuliSpec};
use lspac::exact::{parse_rational, Interval, Rational};
use lspac::markov::{
    census_csv, delta_and_j, lambda0_enclosure, lambda_n, lambda_witness_check, markov_length, markov_word, separation_check,
    theorem1_scan, verify_adjacent_gap, verify_shift_order, DEFAULT_ADJACENT_PERIOD_BOUND,
};
use lspac::spectrum::{
    alphabet_bounds_check, attractor_refine, coverage_witness, designated_index, evaluate_prefix, gap_checks, ghat_apply,
    lemma_v_check, limit_points, lspac_value, measure_zero_certificate, pattern_bounds_check, projection, splice,
    tail_bound_check, verify_digits, SpliceTarget, DEFAULT_GAP_PERIOD_BOUND, DEFAULT_SPLICE_BUDGET,
};
use lspac::Error;
use serde_json::json;

use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "lspac", version, about = "Exact computations for the spectrum of perfect additive complements")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Also print rationals as decimals truncated to this many digits.
    #[arg(long, global = true)]
    decimals: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Moduli {
    /// Moduli as `[pre:<digits>] per:<digits>`, e.g. "pre:6 per:2,3".
    #[arg(long, value_parser = parse_moduli)]
    moduli: ModuliSpec,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smallest accumulation point of T_{m_k}∘…∘T_{m_1}(0).
    Liminf(Moduli),
    /// Largest accumulation point of T_{m_k}∘…∘T_{m_1}(0).
    Limsup(Moduli),
    /// limsup of A(x)B(x)/x, i.e. 2/(1+liminf).
    Lspac(Moduli),
    /// Natural projection Σ (-1)^{k-1}/(m_1⋯m_k).
    Projection(Moduli),
    /// T_{m_k}∘…∘T_{m_1}(0) for one k.
    Prefix {
        #[command(flatten)]
        moduli: Moduli,
        #[arg(long)]
        k: usize,
    },
    /// D_k as an explicit alternating sum.
    Dk {
        #[command(flatten)]
        moduli: Moduli,
        #[arg(long)]
        k: usize,
    },
    /// Build the truncated complement pair and check unique representation.
    Pair {
        #[command(flatten)]
        moduli: Moduli,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        /// Number of leading elements of A and B to print.
        #[arg(long, default_value_t = 16)]
        show: usize,
    },
    /// Counting profile A(x), B(x), A(x)B(x)/x.
    Ratio {
        #[command(flatten)]
        moduli: Moduli,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, default_value_t = 100)]
        x_max: u64,
    },
    /// Compare the finite maximum of A(x)B(x)/x with 2/(1+liminf D_k).
    TheoremB {
        #[command(flatten)]
        moduli: Moduli,
        #[arg(long, default_value_t = 12)]
        levels: usize,
        #[arg(long, default_value = "1/20", value_parser = parse_rational)]
        tolerance: Rational,
    },
    /// λ_n = Fix(T_{M⁽ⁿ⁾}) and γ_n.
    Lambda {
        #[arg(long)]
        n: usize,
        /// Also check the periodic witness realising λ_n.
        #[arg(long)]
        witness: bool,
    },
    /// Alternating-series enclosure of λ₀.
    Lambda0 {
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// γ_n = 2/(1+λ_n).
    Gamma {
        #[arg(long)]
        n: usize,
    },
    /// The word M⁽ⁿ⁾.
    MarkovWord {
        #[arg(long)]
        n: usize,
    },
    /// T_{M⁽ⁿ⁾}(J) precedes the image under every proper rotation.
    ShiftOrder {
        #[arg(long)]
        n: usize,
    },
    /// Separation of (λ_{n+1}, λ_n) from the spectrum.
    AdjacentGap {
        #[arg(long)]
        n: usize,
        /// Refinement depth; defaults to twice the length of M⁽ⁿ⁻¹⁾.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ADJACENT_PERIOD_BOUND)]
        period_bound: usize,
    },
    /// Census of liminf values of periodic {2,3} sequences.
    Theorem1Scan {
        #[arg(long, default_value_t = 12)]
        period_bound: usize,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Empty intervals just above 1/6.
    Gaps {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_GAP_PERIOD_BOUND)]
        period_bound: usize,
    },
    /// Contraction-sum certificate for the admissible quadruples.
    MeasureZero,
    /// Explicit sequence with liminf x for 0 < x < 1/7.
    Coverage {
        #[arg(long, value_parser = parse_rational)]
        x: Rational,
    },
    /// Check the coverage sequence for x up to depth n.
    VerifyCoverage {
        #[arg(long, value_parser = parse_rational)]
        x: Rational,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// 1-based index of a digit to overwrite before checking.
        #[arg(long, requires = "tamper_digit")]
        tamper_index: Option<usize>,
        #[arg(long, requires = "tamper_index")]
        tamper_digit: Option<u32>,
    },
    /// Concatenate witness segments for a sequence of liminf targets.
    Splice {
        /// One per target, in order.
        #[arg(long = "moduli", value_parser = parse_moduli, required = true)]
        targets: Vec<ModuliSpec>,
        /// One per target, non-increasing.
        #[arg(long = "epsilon", value_parser = parse_rational, required = true)]
        epsilons: Vec<Rational>,
        #[arg(long, default_value_t = DEFAULT_SPLICE_BUDGET)]
        budget: usize,
    },
    /// Depth-k cover of the attractor of {T_m : m in digits}.
    Refine {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        digits: Vec<u32>,
        #[arg(long, value_parser = parse_rational, default_value = "1/5")]
        lo: Rational,
        #[arg(long, value_parser = parse_rational, default_value = "2/5")]
        hi: Rational,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Ĝ_m(x) = 2mx/((m+2)x - 2).
    Ghat {
        #[arg(long)]
        m: u32,
        #[arg(long, value_parser = parse_rational)]
        x: Rational,
    },
    /// T_2, …, T_K map [1/(2K-1), (K-1)/(2K-1)] into itself.
    AlphabetBounds {
        #[arg(long)]
        k: u32,
    },
    /// liminf <= 1/(K+1) when the period has a digit >= K.
    TailBound {
        #[command(flatten)]
        moduli: Moduli,
        #[arg(long)]
        k: u32,
    },
    /// Bound the liminf by the fixed point of a recurring word.
    PatternBounds {
        #[command(flatten)]
        moduli: Moduli,
        #[arg(long, value_delimiter = ',', required = true)]
        word: Vec<u32>,
    },
    /// limsup <= 13/31 for admissible {2,3,4} periods.
    LemmaV(Moduli),
    /// δ, J and the separation of T_2(J) and T_3(J).
    Separation,
}

fn parse_moduli(text: &str) -> Result<ModuliSpec, String> {
    text.parse::<ModuliSpec>().map_err(|e| e.to_string())
}

fn run(command: Command) -> lspac::Result<Report> {
    Ok(match command {
        Command::Liminf(Moduli { moduli }) => {
            let points = limit_points(&moduli);
            Report::new().field("moduli", moduli.to_string()).field("liminf", points.liminf())
        }
        Command::Limsup(Moduli { moduli }) => {
            let points = limit_points(&moduli);
            Report::new().field("moduli", moduli.to_string()).field("limsup", points.limsup())
        }
        Command::Lspac(Moduli { moduli }) => {
            Report::new().field("moduli", moduli.to_string()).field("lspac", lspac_value(&moduli))
        }
        Command::Projection(Moduli { moduli }) => {
            Report::new().field("moduli", moduli.to_string()).field("projection", projection(&moduli))
        }
        Command::Prefix { moduli: Moduli { moduli }, k } => Report::new()
            .field("moduli", moduli.to_string())
            .field("k", k)
            .field("value", evaluate_prefix(&moduli, k)?),
        Command::Dk { moduli: Moduli { moduli }, k } => {
            Report::new().field("moduli", moduli.to_string()).field("k", k).field("d_k", d_k(&moduli, k)?)
        }
        Command::Pair { moduli: Moduli { moduli }, levels, show } => {
            let pair = build_pair(&moduli, levels)?;
            let first_bad = pair.first_non_unique();
            Report::new()
                .field("moduli", moduli.to_string())
                .field("levels", levels)
                .field("bound", pair.bound)
                .field("a_size", pair.a.len())
                .field("b_size", pair.b.len())
                .field("a_head", json!(pair.a.iter().take(show).collect::<Vec<_>>()))
                .field("b_head", json!(pair.b.iter().take(show).collect::<Vec<_>>()))
                .field("unique_representation", json!(first_bad.is_none()))
                .field("first_non_unique", json!(first_bad))
        }
        Command::Ratio { moduli: Moduli { moduli }, levels, x_max } => {
            let pair = build_pair(&moduli, levels)?;
            let rows = pair.counting_profile(x_max)?;
            let listed: Vec<_> = rows
                .iter()
                .map(|r| json!({ "x": r.x, "a": r.a_count, "b": r.b_count, "ratio": r.ratio.to_string() }))
                .collect();
            Report::new()
                .field("moduli", moduli.to_string())
                .field("bound", pair.bound)
                .field("rows", json!(listed))
                .table(profile_csv(&rows))
        }
        Command::TheoremB { moduli: Moduli { moduli }, levels, tolerance } => {
            let cert = theorem_b_check(&moduli, levels, &tolerance)?;
            Report::new().field("moduli", moduli.to_string()).field("levels", levels).certificate(cert)
        }
        Command::Lambda { n, witness } => {
            let value = lambda_n(n)?;
            let report = Report::new().field("n", n).field("lambda", value.value).field("gamma", value.gamma);
            if witness {
                report.certificate(lambda_witness_check(n)?)
            } else {
                report
            }
        }
        Command::Lambda0 { terms } => {
            let enclosure = lambda0_enclosure(terms)?;
            Report::new().field("terms", terms).field("width", enclosure.width()).field("enclosure", enclosure)
        }
        Command::Gamma { n } => {
            let value = lambda_n(n)?;
            Report::new().field("n", n).field("gamma", value.gamma)
        }
        Command::MarkovWord { n } => {
            let word = markov_word(n)?;
            Report::new().field("n", n).field("length", word.len()).field("word", word.word)
        }
        Command::ShiftOrder { n } => Report::new().field("n", n).certificate(verify_shift_order(n)?),
        Command::AdjacentGap { n, depth, period_bound } => {
            let depth = depth.unwrap_or_else(|| 2 * markov_length(n.saturating_sub(1).max(1)) as usize);
            Report::new().field("n", n).field("depth", depth).certificate(verify_adjacent_gap(n, depth, period_bound)?)
        }
        Command::Theorem1Scan { period_bound, terms } => {
            let scan = theorem1_scan(period_bound, terms)?;
            let census: Vec<_> = scan
                .rows
                .iter()
                .map(|r| json!({ "period": r.period, "liminf": r.liminf.to_string(), "classification": r.classification.to_string() }))
                .collect();
            Report::new()
                .field("period_bound", period_bound)
                .field("census", json!(census))
                .table(census_csv(&scan.rows))
                .certificate(scan.certificate)
        }
        Command::Gaps { n_max, period_bound } => Report::new().field("n_max", n_max).certificate(gap_checks(n_max, period_bound)?),
        Command::MeasureZero => {
            let cert = measure_zero_certificate();
            let recorded = |label| match cert.witness(label) {
                Some(WitnessValue::Rational(r)) => r.clone(),
                _ => unreachable!("the certificate records {label}"),
            };
            let (count, sum) = (recorded("count"), recorded("sum"));
            Report::new().field("count", u64::try_from(count.to_integer()).expect("small count")).field("sum", sum).certificate(cert)
        }
        Command::Coverage { x } => {
            let w = coverage_witness(&x)?;
            Report::new()
                .field("x", &w.x)
                .field("m", w.m)
                .field("y", &w.y)
                .field("preperiod", w.preperiod.clone())
                .field("period", w.period.clone())
                .field("orbit", json!(w.orbit.iter().map(|z| z.to_string()).collect::<Vec<_>>()))
                .field("sequence_head", w.sequence(designated_index(4)))
        }
        Command::VerifyCoverage { x, n_max, tamper_index, tamper_digit } => {
            let w = coverage_witness(&x)?;
            let mut digits = w.sequence(designated_index(n_max.max(1)));
            if let (Some(i), Some(d)) = (tamper_index, tamper_digit) {
                if i == 0 || i > digits.len() {
                    return Err(Error::InvalidInput(format!("tamper index {i} outside 1..={}", digits.len())));
                }
                digits[i - 1] = d;
            }
            Report::new().field("x", &x).field("m", w.m).certificate(verify_digits(&x, w.m, &digits, n_max)?)
        }
        Command::Splice { targets, epsilons, budget } => {
            let targets: Vec<SpliceTarget> = targets
                .into_iter()
                .map(|spec| {
                    let alpha = limit_points(&spec).liminf().clone();
                    SpliceTarget { spec, alpha }
                })
                .collect();
            let (plan, cert) = splice(&targets, &epsilons, budget)?;
            Report::new()
                .field("targets", json!(plan.targets.iter().map(|a| a.to_string()).collect::<Vec<_>>()))
                .field("cuts", json!(plan.cuts))
                .field("boundaries", json!(plan.boundaries))
                .field("word", plan.word)
                .certificate(cert)
        }
        Command::Refine { digits, lo, hi, depth } => {
            let base = Interval::new(lo, hi)?;
            let pieces = attractor_refine(&digits, &base, depth)?;
            let listed: Vec<_> = pieces.iter().map(|p| json!({ "lo": p.lo().to_string(), "hi": p.hi().to_string() })).collect();
            let total: Rational = pieces.iter().map(Interval::width).sum();
            Report::new()
                .field("pieces", pieces.len())
                .field("total_length", total)
                .field("intervals", json!(listed))
        }
        Command::Ghat { m, x } => Report::new().field("m", m).field("x", &x).field("value", ghat_apply(m, &x)?),
        Command::AlphabetBounds { k } => Report::new().field("k", k).certificate(alphabet_bounds_check(k)?),
        Command::TailBound { moduli: Moduli { moduli }, k } => {
            Report::new().field("moduli", moduli.to_string()).certificate(tail_bound_check(&moduli, k)?)
        }
        Command::PatternBounds { moduli: Moduli { moduli }, word } => {
            Report::new().field("moduli", moduli.to_string()).certificate(pattern_bounds_check(&moduli, &word)?)
        }
        Command::LemmaV(Moduli { moduli }) => {
            Report::new().field("moduli", moduli.to_string()).certificate(lemma_v_check(&moduli)?)
        }
        Command::Separation => {
            let (delta, j) = delta_and_j();
            Report::new().field("delta", delta).field("j", j).certificate(separation_check())
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.format, cli.decimals));
            if report.verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::parse_moduli;

    #[test]
    fn parses_moduli_text() {
        let spec = parse_moduli("per:2").unwrap();
        assert!(spec.preperiod().is_empty());
        assert_eq!(spec.period(), &[2]);
        let spec = parse_moduli("pre:6 per:2,3").unwrap();
        assert_eq!(spec.preperiod(), &[6]);
        assert_eq!(spec.period(), &[2, 3]);
        assert!(parse_moduli("per:1,2").is_err());
        assert!(parse_moduli("pre:3").is_err());
    }
}
