use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use dm_core::construct::{
    dm_from_complement, graham_sloane_stable_set, random_stable_set, sample_cut_construction,
    sample_stacked_even_dm, ComplementMode,
};
use dm_core::encode::record::infeasible_even;
use dm_core::encode::spectrum::{component_spectrum, rn_spectrum, MATRIX_LIMIT};
use dm_core::encode::{
    bound_calculator, decode_even_dm, decode_system, encode_even_dm, rn_matrix_identity,
    smallest_eigenvalue, EncodingRecord, Parity,
};
use dm_core::enumerate::classes::count_next_by_classes;
use dm_core::enumerate::{
    count_report, verify_series, CacheStore, CountOptions, Levels, LIST_LIMIT,
};
use dm_core::format::{from_json, to_json};
use dm_core::{DmError, Exchange, Mask, SetSystem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::cli::{Cli, Command, Construction, OutputFormat};

pub enum Failure {
    /// Exit 1.
    Violation(String),
    /// Exit 2.
    Usage(String),
    /// Exit 3.
    Limit(String),
}

impl From<DmError> for Failure {
    fn from(e: DmError) -> Self {
        match e {
            DmError::ResourceLimit { .. } => Failure::Limit(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Check { path } => check(&read_system(path)?, fmt),
        Command::Count {
            max_n,
            with_even,
            allow_n6,
        } => count(cli, usize::from(*max_n), *with_even, *allow_n6),
        Command::CountEven { n, allow_n6 } => count_even(cli, usize::from(*n), *allow_n6),
        Command::Construct { kind } => construct(kind, cli.seed, fmt),
        Command::Encode { input, out } => {
            let rec = encode_even_dm(&read_system(input)?)?;
            emit_to(out.as_deref(), &pretty(&rec))
        }
        Command::Decode { input } => {
            let text = read(input)?;
            let rec: EncodingRecord = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", input.display())))?;
            emit_to(None, &to_json(&decode_system(&rec)?))
        }
        Command::Roundtrip { path } => roundtrip(&read_system(path)?, fmt),
        Command::Spectrum { n } => spectrum(usize::from(*n), fmt),
        Command::Bound { n } => bound(usize::from(*n), fmt),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_system(path: &Path) -> Result<SetSystem, Failure> {
    from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn emit_to(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, format!("{text}\n"))
            .map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn set_text(m: Mask) -> String {
    let elems: Vec<String> = (0..32)
        .filter(|i| m >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", elems.join(","))
}

fn check(d: &SetSystem, fmt: OutputFormat) -> Outcome {
    if !d.is_proper() {
        match fmt {
            OutputFormat::Text => println!("proper: no\ndelta-matroid: no"),
            OutputFormat::Json => println!(
                "{}",
                pretty(&json!({"n": d.n(), "proper": false, "delta_matroid": false}))
            ),
        }
        return Err(Failure::Violation("the system has no feasible sets".into()));
    }
    let verdict = d.check_symmetric_exchange()?;
    let even = d.is_even()?;
    let witness = match verdict {
        Exchange::Pass => None,
        Exchange::Violation(w) => Some(w),
    };
    match fmt {
        OutputFormat::Text => {
            let mut s = String::new();
            writeln!(s, "proper: yes").unwrap();
            writeln!(s, "delta-matroid: {}", if witness.is_none() { "yes" } else { "no" }).unwrap();
            if let Some(w) = witness {
                writeln!(s, "witness: X = {}, Y = {}, e = {}", set_text(w.x), set_text(w.y), w.e)
                    .unwrap();
            }
            write!(s, "even: {}", if even { "yes" } else { "no" }).unwrap();
            println!("{s}");
        }
        OutputFormat::Json => {
            let w = witness.map(|w| json!({"x": w.x, "y": w.y, "e": w.e}));
            println!(
                "{}",
                pretty(&json!({
                    "n": d.n(),
                    "proper": true,
                    "delta_matroid": witness.is_none(),
                    "witness": w,
                    "even": even,
                }))
            );
        }
    }
    match witness {
        None => Ok(()),
        Some(w) => Err(Failure::Violation(format!(
            "exchange fails at X = {}, Y = {}, e = {}",
            set_text(w.x),
            set_text(w.y),
            w.e
        ))),
    }
}

fn count(cli: &Cli, max_n: usize, with_even: bool, allow_n6: bool) -> Outcome {
    let store = CacheStore::new(&cli.cache_dir);
    let mut levels = Levels::new(Some(&store));
    let rows = count_report(max_n, CountOptions { with_even, allow_n6 }, &mut levels)?;
    if !levels.hits.is_empty() {
        eprintln!("cache hits for levels {:?}", levels.hits);
    }
    match cli.format {
        OutputFormat::Text => {
            let mut s = format!("{:>2}  {:>12}  {:>8}", "n", "d_n", "gamma_n");
            if with_even {
                write!(s, "  {:>12}", "e_n").unwrap();
            }
            for r in &rows {
                write!(s, "\n{:>2}  {:>12}  {:>8.6}", r.n, r.d_n, r.gamma_n).unwrap();
                if let Some(e) = r.e_n {
                    write!(s, "  {e:>12}").unwrap();
                }
            }
            println!("{s}");
        }
        OutputFormat::Json => println!("{}", pretty(&rows)),
    }
    verify_series(&rows).map_err(Failure::Violation)
}

fn count_even(cli: &Cli, n: usize, allow_n6: bool) -> Outcome {
    let store = CacheStore::new(&cli.cache_dir);
    let mut levels = Levels::new(Some(&store));
    let e_n = if n <= LIST_LIMIT {
        levels.get(n)?.count_even()
    } else if n == LIST_LIMIT + 1 && allow_n6 {
        count_next_by_classes(levels.get(LIST_LIMIT)?)?.1
    } else {
        return Err(DmError::ResourceLimit {
            requested: n,
            limit: if allow_n6 { LIST_LIMIT + 1 } else { LIST_LIMIT },
        }
        .into());
    };
    match cli.format {
        OutputFormat::Text => println!("e_{n} = {e_n}"),
        OutputFormat::Json => println!("{}", pretty(&json!({"n": n, "e_n": e_n}))),
    }
    Ok(())
}

fn construct(kind: &Construction, seed: u64, fmt: OutputFormat) -> Outcome {
    let (system, out) = match kind {
        Construction::StableComplement { n, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = random_stable_set(usize::from(*n), &mut rng)?;
            (dm_from_complement(&v, ComplementMode::Stable)?, out)
        }
        Construction::CutSample { n, cut, out } => (
            sample_cut_construction(usize::from(*n), usize::from(*cut), seed)?,
            out,
        ),
        Construction::StackedEven { n, out } => {
            (sample_stacked_even_dm(usize::from(*n), seed)?, out)
        }
        Construction::GsStable { n, r } => {
            let set = graham_sloane_stable_set(usize::from(*n), usize::from(*r))?;
            let text = match fmt {
                OutputFormat::Text => set
                    .members()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join("\n"),
                OutputFormat::Json => pretty(&set.members()),
            };
            return emit_to(None, &text);
        }
    };
    emit_to(out.as_deref(), &to_json(&system))
}

fn roundtrip(d: &SetSystem, fmt: OutputFormat) -> Outcome {
    let rec = encode_even_dm(d)?;
    let work = match rec.parity {
        Parity::Even => d.clone(),
        Parity::Odd => d.twist(1)?,
    };
    let expected = infeasible_even(&work);
    let exact = decode_even_dm(&rec)? == expected && &decode_system(&rec)? == d;
    let half = 1u64 << (rec.n - 1);
    let alpha_n = rec.alpha.0 * half;
    match fmt {
        OutputFormat::Text => println!(
            "round trip: {}\nparity: {}\n|L| = {}\n|S| = {} (bound {})\n|residual| = {} (|A| <= {})",
            if exact { "exact" } else { "MISMATCH" },
            match rec.parity {
                Parity::Even => "even",
                Parity::Odd => "odd",
            },
            expected.len(),
            rec.s.len(),
            rec.s_bound,
            rec.residual.len(),
            alpha_n.to_integer(),
        ),
        OutputFormat::Json => println!(
            "{}",
            pretty(&json!({
                "exact": exact,
                "parity": rec.parity,
                "infeasible_even": expected.len(),
                "s": rec.s.len(),
                "s_bound": rec.s_bound,
                "residual": rec.residual.len(),
                "a_bound": alpha_n.to_integer(),
            }))
        ),
    }
    if exact {
        Ok(())
    } else {
        Err(Failure::Violation("decoding does not reproduce the system".into()))
    }
}

fn spectrum(n: usize, fmt: OutputFormat) -> Outcome {
    let entries = rn_spectrum(n)?;
    let component = component_spectrum(n)?;
    let least = smallest_eigenvalue(n)?;
    let identity = if n <= MATRIX_LIMIT {
        Some(rn_matrix_identity(n)?)
    } else {
        None
    };
    match fmt {
        OutputFormat::Text => {
            let mut s = format!("{:>4}  {:>6}  {:>12}", "mu", "value", "multiplicity");
            for e in &entries {
                write!(s, "\n{:>4}  {:>6}  {:>12}", e.hypercube, e.value, e.multiplicity).unwrap();
            }
            write!(s, "\ncomponent:").unwrap();
            for (v, k) in &component {
                write!(s, " {v}^{k}").unwrap();
            }
            write!(s, "\nsmallest eigenvalue: {least}").unwrap();
            let id = match identity {
                Some(true) => "verified",
                Some(false) => "FAILED",
                None => "skipped",
            };
            write!(s, "\nmatrix identity: {id}").unwrap();
            println!("{s}");
        }
        OutputFormat::Json => {
            let component: Vec<_> = component
                .iter()
                .map(|&(v, k)| json!({"value": v, "multiplicity": k}))
                .collect();
            println!(
                "{}",
                pretty(&json!({
                    "n": n,
                    "entries": entries,
                    "component": component,
                    "smallest_eigenvalue": least,
                    "matrix_identity": identity,
                }))
            );
        }
    }
    if identity == Some(false) {
        return Err(Failure::Violation("2 A(R) != A(Q)^2 - n I".into()));
    }
    Ok(())
}

fn bound(n: usize, fmt: OutputFormat) -> Outcome {
    let r = bound_calculator(n)?;
    match fmt {
        OutputFormat::Text => println!(
            "n = {}\ndegree = {}\nlambda = {}\nalpha = {}\nsigma = {:.9}\nsigma' = {}\n\
             s bound = {}\nB(n+1) = {}\nB(n+1) <= (n+1)^(n+1): {}\n\
             log2 sum bound = {:.6}\nlog2 e_n bound = {:.6}",
            r.n,
            r.degree,
            r.lambda,
            r.alpha,
            r.sigma,
            r.sigma_prime,
            r.s_bound,
            r.bell,
            r.bell_within_crude_bound,
            r.log_sum_bound,
            r.log_e_n_bound,
        ),
        OutputFormat::Json => println!("{}", pretty(&r)),
    }
    if r.bell_within_crude_bound && r.sigma_prime_in_range {
        Ok(())
    } else {
        Err(Failure::Violation("bound preconditions fail".into()))
    }
}
