use std::path::PathBuf;

use clap::Args;
use serde_json::json;

use aurea::fib::{fib_exact, fib_mod, lucas_exact, pisano_period, successive_ratio};

use crate::config::Config;
use crate::emit::{print_json, write_bytes};
use crate::error::CliResult;

/// Fibonacci/Lucas tables with optional modular column and Pisano period.
#[derive(Debug, Args)]
pub struct FibArgs {
    /// Largest index to tabulate (inclusive).
    #[arg(long)]
    n: Option<u64>,
    /// Add a Lucas-number column.
    #[arg(long)]
    lucas: bool,
    /// Reduce modulo this value; also reports the Pisano period.
    #[arg(long = "mod", value_name = "K")]
    modulus: Option<u64>,
    /// Write the table to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

pub fn run(args: FibArgs, cfg: &Config) -> CliResult {
    let n = cfg.u64(args.n, "n", 20)?;
    let lucas = cfg.bool(Some(args.lucas).filter(|&b| b), "lucas", false)?;
    let modulus = match args.modulus {
        Some(k) => Some(k),
        None => match cfg.u64(None, "mod", 0)? {
            0 => None,
            k => Some(k),
        },
    };

    let mut table = String::from("n,fib");
    if lucas {
        table.push_str(",lucas");
    }
    if let Some(k) = modulus {
        table.push_str(&format!(",mod{k}"));
    }
    table.push_str(",ratio\n");
    for i in 0..=n {
        table.push_str(&format!("{i},{}", fib_exact(i)));
        if lucas {
            table.push_str(&format!(",{}", lucas_exact(i)));
        }
        if let Some(k) = modulus {
            table.push_str(&format!(",{}", fib_mod(i, k)?));
        }
        match successive_ratio(i) {
            Ok(r) => table.push_str(&format!(",{r}\n")),
            Err(_) => table.push_str(",\n"), // undefined below n = 2
        }
    }

    let period = modulus.map(pisano_period).transpose()?;
    if let Some(path) = &args.csv {
        write_bytes(path, table.as_bytes())?;
        let mut report = json!({"rows": n + 1, "csv": path});
        if let (Some(k), Some(p)) = (modulus, period) {
            report["modulus"] = json!(k);
            report["pisano_period"] = json!(p);
        }
        print_json(&report);
    } else {
        print!("{table}");
        if let (Some(k), Some(p)) = (modulus, period) {
            // Keep stdout pipeable CSV; the period note goes to stderr.
            eprintln!("pisano_period({k}) = {p}");
        }
    }
    Ok(())
}
