use super::{FiniteGroup, GroupError};

/// Searches for an isomorphism `g → h`, returned as the element map
/// `phi[x]`.
///
/// Backtracks over images of a fixed generating set of `g`, trying
/// candidates of matching element order in increasing index order, so the
/// result is the isomorphism with the lexicographically least generator
/// image sequence. Each partial assignment is extended along the Cayley graph
/// and rejected as soon as it stops being a well-defined injective map.
pub fn isomorphism_search(
    g: &FiniteGroup,
    h: &FiniteGroup,
) -> Result<Option<Vec<usize>>, GroupError> {
    if g.order() != h.order() {
        return Err(GroupError::OrderMismatch {
            left: g.order(),
            right: h.order(),
        });
    }
    if g.order_profile() != h.order_profile() || g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }
    let gens = g.generators();
    let h_orders: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    let mut images = Vec::with_capacity(gens.len());
    let found = backtrack(g, h, &gens, &h_orders, &mut images);
    debug_assert!(found.as_ref().is_none_or(|phi| is_isomorphism(g, h, phi)));
    Ok(found)
}

fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    h_orders: &[usize],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = images.len();
    if k == gens.len() {
        let phi = extend(g, h, gens, images)?;
        return phi
            .iter()
            .all(Option::is_some)
            .then(|| phi.into_iter().flatten().collect());
    }
    let want = g.element_order(gens[k]);
    for c in h.elements() {
        if h_orders[c] != want {
            continue;
        }
        images.push(c);
        if extend(g, h, &gens[..=k], images).is_some() {
            if let Some(phi) = backtrack(g, h, gens, h_orders, images) {
                return Some(phi);
            }
        }
        images.pop();
    }
    None
}

/// Extends generator images to the generated subgroup; `None` on conflict
/// or loss of injectivity.
fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut phi = vec![None; g.order()];
    let mut used = vec![false; h.order()];
    phi[g.identity()] = Some(h.identity());
    used[h.identity()] = true;
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        let fx = phi[x].expect("frontier elements are mapped");
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, t);
            match phi[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    phi[y] = Some(fy);
                    frontier.push(y);
                }
            }
        }
    }
    Some(phi)
}

/// Full check that `phi` is a bijective homomorphism.
pub fn is_isomorphism(g: &FiniteGroup, h: &FiniteGroup, phi: &[usize]) -> bool {
    if phi.len() != g.order() || g.order() != h.order() {
        return false;
    }
    let mut hit = vec![false; h.order()];
    for &y in phi {
        if y >= h.order() || hit[y] {
            return false;
        }
        hit[y] = true;
    }
    g.elements().all(|a| {
        g.elements()
            .all(|b| phi[g.mul(a, b)] == h.mul(phi[a], phi[b]))
    })
}
