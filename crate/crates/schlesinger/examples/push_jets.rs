//! Push a single jet through generators and words, and see the typed errors
//! for directions that have no closed form.

use num_complex::Complex64 as C;
use schlesinger::birational::{push_generator, push_word, Exponents, TransformDirection};
use schlesinger::catalog::Generator;
use schlesinger::pvi::Jet;
use schlesinger::rational::ThetaVector;
use schlesinger::word::parse_word;

fn main() -> schlesinger::error::Result<()> {
    let theta = Exponents::exact(ThetaVector::parse("1/3,1/4,1/5,1/6")?);
    let j = Jet::new(C::new(0.4, 0.1), C::new(1.5, -0.5), C::new(0.3, 0.2));

    for g in [Generator::Tcm, Generator::Tms, Generator::Hbadc, Generator::Habdc] {
        let (img, th) = push_generator(g, TransformDirection::NewToOld, &j, &theta)?;
        println!("{:<6} {img}\n       theta {}", g.name(), th.exact.unwrap());
    }
    let (img, th) = push_generator(Generator::Tnjh, TransformDirection::OldToNew, &j, &theta)?;
    println!("Tnjh^-1 {img}\n       theta {}", th.exact.unwrap());

    // T_CM is an involution: two pushes give the jet back.
    let (back, _) = push_word(&parse_word("Tcm^2")?, &j, &theta)?;
    println!("Tcm^2 returns u within {:.1e}", (back.u - j.u).norm());

    for w in ["Tok", "Tnjh", "Tms^-1"] {
        match push_word(&parse_word(w)?, &j, &theta) {
            Ok(_) => println!("{w}: ok"),
            Err(e) => println!("{w}: {e}"),
        }
    }

    // Exponent sum 1 makes T_CM the identity on exponents; the map is then undefined.
    let flat = Exponents::exact(ThetaVector::parse("1/4,1/4,1/4,1/4")?);
    if let Err(e) = push_word(&parse_word("Tcm")?, &j, &flat) {
        println!("Tcm at sum 1: {}", e.root());
    }
    Ok(())
}
