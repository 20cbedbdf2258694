//! Regenerates the three remainder/bound tables and runs the built-in self-test.

use ::lommel::cli::{cmd_selftest, cmd_table, format_sig5};

fn main() -> Result<(), ::lommel::cli::CliError> {
    for id in 1..=3 {
        println!("table {id}");
        for row in cmd_table(id)? {
            let rem = row.remainder.map_or("-".to_string(), format_sig5);
            println!("  {:>7} N = {:>2}  |R| = {:>12}  bound = {:>12}  {}", row.arg_z, row.n, rem, format_sig5(row.bound), row.bound_tag);
        }
    }
    let (report, ok) = cmd_selftest();
    println!("{report}");
    println!("selftest {}", if ok { "passed" } else { "failed" });
    Ok(())
}
