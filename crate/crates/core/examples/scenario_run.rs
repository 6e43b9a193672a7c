//! Drives the experiment runner from code instead of the command line.
//!
//!     cargo run --release --example scenario_run -- [out_dir]

use bochner_core::cli::{execute, Command, Scenario};

fn main() {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "out/scenario_run".into());
    let text = format!(
        r#"{{
            "space": {{"space": "finite", "masses": [0.5, 0.25, 2, "inf"]}},
            "function": {{"kind": "table", "values": [
                {{"carrier": "real", "coords": [4]}},
                {{"carrier": "real", "coords": [1]}},
                {{"carrier": "real", "coords": [0.5]}},
                {{"carrier": "real", "coords": [0]}}]}},
            "carrier": "complex",
            "eps": 0.05,
            "n_max": 200000,
            "samples": 200,
            "sample_radius": 1,
            "out": {out:?}
        }}"#
    );
    let sc = match Scenario::from_json(&text) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code().into());
        }
    };
    for cmd in [
        Command::IntegrateSf,
        Command::Bint,
        Command::CompareLebesgue,
        Command::SepCheck,
    ] {
        match execute(cmd, &sc) {
            Ok(o) => println!("{:<16} {} -> {}", cmd.name(), o.summary, o.csv.display()),
            Err(e) => println!("{:<16} error: {e}", cmd.name()),
        }
    }
}
