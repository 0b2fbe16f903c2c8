//! Maps between wreath products induced by G-maps and by homomorphisms of either argument.

use wreathlab::catalog::cyclic;
use wreathlab::functorial::{
    canonical_gmap_to_product, descending_to_ascending, induction_step_epis, map_first_argument,
    map_second_argument,
};
use wreathlab::hom::verify_homomorphism;
use wreathlab::wreath::GroupAction;
use wreathlab::Limits;

fn main() -> wreathlab::Result<()> {
    let limits = Limits::default();
    let (c2, c4) = (cyclic(2)?, cyclic(4)?);
    let q = verify_homomorphism(&c4, &c2, c2.generators().to_vec(), &limits)?;

    let m = map_first_argument(&q, &GroupAction::regular(&c2), &limits)?;
    println!(
        "C4 wr C2 -> C2 wr C2: {} -> {}, kernel {:?}",
        m.source.order(),
        m.target.order(),
        m.hom.kernel_order()
    );
    let m = map_second_argument(&c2, &q, &limits)?;
    println!(
        "C2 wr C4 -> C2 wr C2: {} -> {}, kernel {:?}",
        m.source.order(),
        m.target.order(),
        m.hom.kernel_order()
    );

    let (_, phi) = canonical_gmap_to_product(&c2, &c2, &limits)?;
    println!(
        "canonical G-map: {} points onto {}",
        phi.source().degree(),
        phi.target().degree()
    );

    let step = induction_step_epis(&c2, &c2, &c2, &limits)?;
    let comp = step.composite(&limits)?;
    println!(
        "induction step: {} -> {} -> {}, composite kernel {:?}",
        step.domain.order(),
        step.middle.order(),
        step.target.order(),
        comp.kernel_order()
    );
    let h = descending_to_ascending(&[c2.clone(), c2.clone(), c2], &limits)?;
    println!(
        "descending to ascending: {} -> {}",
        h.domain().order(),
        h.codomain().order()
    );
    Ok(())
}
