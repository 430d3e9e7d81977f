//! Checks axiom instances on random models and refutes a non-valid formula.

use gamepowers::logic::{axiom_soundness_suite, countermodel_search, parse_formula};

fn main() -> gamepowers::Result<()> {
    let report = axiom_soundness_suite(0, 500);
    println!("axiom instances checked: {}", report.samples);
    for (schema, n) in &report.per_schema {
        println!("  {schema:<10} {n}");
    }
    println!("violations: {}", report.violations.len());

    let f = parse_formula("[A](p; p | q) -> [A](p; p)")?;
    let search = countermodel_search(&f, 2, 0, 10_000);
    match &search.countermodel {
        Some(c) => println!("countermodel at {}: {}", c.world, c.model),
        None => println!("no countermodel in {} models", search.models_checked),
    }
    Ok(())
}
