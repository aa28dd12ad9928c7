//! The README example: build a catalog profile, read its jumps, and check
//! the phi/psi roundtrip exactly.

use herbrand::exactnum::Rational;
use herbrand::ramification::RamificationProfile;

fn main() -> herbrand::Result<()> {
    let profile = RamificationProfile::cyclotomic(2, 3)?; // Q_2(zeta_8)
    assert_eq!(profile.e(), 4);
    assert_eq!(
        profile.upper_jumps(),
        vec![Rational::from(1u64), Rational::from(2u64)]
    );

    let phi = profile.build_phi();
    let psi = profile.build_psi();
    let x = Rational::new(7, 3);
    assert_eq!(psi.eval(&phi.eval(&x)?)?, x); // exact, not approximate

    println!("upper jumps: {:?}", profile.upper_jumps().iter().map(|j| j.to_string()).collect::<Vec<_>>());
    println!("roundtrip at {x}: exact");
    Ok(())
}
