//! Which conditions a pair of families satisfies.

use gamepowers::outcome::Outcomes;
use gamepowers::powers::{check_conditions, upward_closure, PowerFamily};

fn main() -> gamepowers::Result<()> {
    let o = Outcomes::new(["1", "2", "3"])?;
    let fa = PowerFamily::from_labels(o.clone(), &[&["1"], &["2", "3"]])?;
    let fb = PowerFamily::from_labels(o.clone(), &[&["1", "2"], &["1", "3"]])?;

    let (pa, pb) = check_conditions(&fa, &fb)?;
    println!("basic pair: A basic_ok={} B basic_ok={}", pa.basic_ok(), pb.basic_ok());
    println!("{}", serde_json::to_string_pretty(&pa)?);

    let (pa, pb) = check_conditions(&upward_closure(&fa), &upward_closure(&fb))?;
    println!("closed pair: A plain_ok={} B plain_ok={}", pa.plain_ok(), pb.plain_ok());
    println!("determinacy: A {} B {}", pa.determinacy.holds, pb.determinacy.holds);
    Ok(())
}
