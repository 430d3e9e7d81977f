//! Drives the command-line interface in process.

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let runs = [
        vec!["equiv".to_string(), format!("{data}/dist_left.json"), format!("{data}/dist_right.json"), "--relation".into(), "strong".into()],
        vec!["mc".to_string(), format!("{data}/dist_right_model.json"), "[A]true".into()],
        vec!["congruence".to_string(), "+".into(), "--samples".into(), "50".into(), "--seed".into(), "1".into()],
    ];
    for args in runs {
        let out = gamepowers::cli::run(std::iter::once("gamepowers".to_string()).chain(args.iter().cloned()));
        println!("$ gamepowers {}", args.join(" "));
        print!("{}", out.stdout);
        println!("exit {}", out.code);
    }
}
