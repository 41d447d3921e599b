// Driving the command line from code: generate an instance, then analyze
// it and compute its worst-case fairness.
//
// ```text
// cargo run --example command_line
// ```

use std::error::Error;
use tufair::cli::run;

fn call(args: &[&str]) -> Result<String, Box<dyn Error>> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args.iter().copied(), &mut out, &mut err);
    if code != 0 {
        return Err(format!("{args:?} exited with {code}: {}", String::from_utf8_lossy(&err)).into());
    }
    Ok(String::from_utf8(out)?)
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let instance = call(&["tufair", "gen", "--n", "4", "--p", "0.7", "--wmax", "3", "--seed", "11"])?;
    let path = std::env::temp_dir().join(format!("tufair-example-{}.json", std::process::id()));
    std::fs::write(&path, &instance)?;
    let file = path.to_str().ok_or("non-UTF-8 temp path")?;
    print!("{instance}");
    print!("{}", call(&["tufair", "analyze", file, "--baseline", "shapley"])?);
    print!("{}", call(&["tufair", "exact", file, "--lambda", "2", "--eta", "0.5"])?);
    print!("{}", call(&["tufair", "verify", file, "--lambda", "0.5,1,2"])?);
    std::fs::remove_file(&path)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
