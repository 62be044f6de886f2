// Evaluates a key=value run configuration in memory and prints the CSV.
//
//     cargo run --example run_config

use lambda_fluor::cli::{compute, parse_config};

const CONFIG: &str = "
# F versus Omega3 at the squeezing phase
mode=omega3-sweep
gamma1=20
omega1=8
omega2=8
phi=-pi/2
grid=0,5,11
output=omega3.csv
";

fn main() {
    let config = parse_config(CONFIG).unwrap();
    for artifact in compute(&config).unwrap() {
        print!("{}", artifact.table.to_csv());
    }
}
