//! Evaluate words to exact affine maps and read off their orders.
//!
//!     cargo run --example compose_words -- "(Sa*Tcm*Hbadc)^6"

use schlesinger::word::{evaluate_str, Convention};

fn main() -> schlesinger::error::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let words = if args.is_empty() {
        vec!["Tcm".to_string(), "Tcm^2".into(), "Sa*Tcm".into(), "(Sa*Sb*Tcm*Hbadc)^2".into(), "Habdc*Tms*Habdc".into(), "Tnjh".into()]
    } else {
        args
    };
    for w in &words {
        let m = evaluate_str(w, Convention::Last)?;
        let ord = m.order_of(12);
        println!("{m}");
        match ord.order {
            Some(n) => println!("order {n}\n"),
            None => println!("order > 12 (affine part has no finite order)\n"),
        }
    }

    // Reading order matters for non-commuting factors.
    let a = evaluate_str("Tcm*Hbadc", Convention::Last)?;
    let b = evaluate_str("Tcm*Hbadc", Convention::First)?;
    println!("Tcm*Hbadc read last vs first: same map = {}", a == b);
    Ok(())
}
