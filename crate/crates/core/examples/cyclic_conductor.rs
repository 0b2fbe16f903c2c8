//! Smallest prime p = 1 mod N: C_N is a quotient of the Galois group of Q(zeta_p).

use wreathlab::invariants::cyclic_conductor;

fn main() -> wreathlab::Result<()> {
    for n in [2, 3, 4, 5, 8, 12, 100, 1000] {
        let rec = cyclic_conductor(n)?;
        println!(
            "{:>6}: p = {:>5}, {} candidates rejected",
            rec.group, rec.prime, rec.rejected
        );
    }
    println!("{}", cyclic_conductor(1).unwrap_err());
    Ok(())
}
