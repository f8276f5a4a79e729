//! Named covariants built from transvectants, cached after first use.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::invariants::{combination_ab_minus_3c, invariant, InvariantName};
use super::{transvectant, universal_sextic, Covariant, CovariantError};

#[derive(Clone, Copy)]
enum Recipe {
    Sextic,
    /// Canonically rescaled `(f, f)_k`.
    Square(u32),
    /// `(g, h^e)_k`
    Trans(&'static str, &'static str, u32, u32),
}

use Recipe::*;

const RECIPES: &[(&str, Recipe)] = &[
    ("C1,6", Sextic),
    ("C2,0", Square(6)),
    ("C2,4", Square(4)),
    ("C2,8", Square(2)),
    ("C3,2", Trans("C1,6", "C2,4", 1, 4)),
    ("C3,6", Trans("C1,6", "C2,4", 1, 2)),
    ("C3,8", Trans("C1,6", "C2,4", 1, 1)),
    ("C3,12", Trans("C1,6", "C2,8", 1, 1)),
    ("C4,0", Trans("C2,4", "C2,4", 1, 4)),
    ("C4,4", Trans("C1,6", "C3,2", 1, 2)),
    ("C4,6", Trans("C1,6", "C3,2", 1, 1)),
    ("C4,10", Trans("C2,8", "C2,4", 1, 1)),
    ("C5,2", Trans("C2,4", "C3,2", 1, 2)),
    ("C5,4", Trans("C2,4", "C3,2", 1, 1)),
    ("C5,8", Trans("C2,8", "C3,2", 1, 1)),
    ("C6,0", Trans("C3,2", "C3,2", 1, 2)),
    ("C6,6a", Trans("C3,6", "C3,2", 1, 1)),
    ("C6,6b", Trans("C3,8", "C3,2", 1, 2)),
    ("C7,2", Trans("C1,6", "C3,2", 2, 4)),
    ("C7,4", Trans("C1,6", "C3,2", 2, 3)),
    ("C8,2", Trans("C2,4", "C3,2", 2, 3)),
    ("C9,4", Trans("C3,8", "C3,2", 2, 4)),
    ("C10,0", Trans("C1,6", "C3,2", 3, 6)),
    ("C10,2", Trans("C1,6", "C3,2", 3, 5)),
    ("C12,2", Trans("C3,8", "C3,2", 3, 6)),
    ("C15,0", Trans("C3,8", "C3,2", 4, 8)),
];

const ALIASES: &[(&str, &str)] = &[("f", "C1,6"), ("H", "C2,8"), ("hessian", "C2,8"), ("V8,4", "C2,4")];

fn cells() -> &'static HashMap<&'static str, (Recipe, OnceLock<Covariant>)> {
    static CELLS: OnceLock<HashMap<&'static str, (Recipe, OnceLock<Covariant>)>> = OnceLock::new();
    CELLS.get_or_init(|| RECIPES.iter().map(|(name, r)| (*name, (*r, OnceLock::new()))).collect())
}

fn build(recipe: Recipe) -> Covariant {
    let f = universal_sextic();
    match recipe {
        Sextic => f,
        Square(k) => transvectant(&f, &f, k).expect("k <= 6").primitive(),
        Trans(g, h, e, k) => {
            let g = grace_young(g).expect("catalog entry");
            let h = grace_young(h).expect("catalog entry").pow(e);
            transvectant(&g, &h, k).expect("orders checked in catalog")
        }
    }
}

/// Names of the transvectant catalog, in catalog order.
pub fn catalog_names() -> Vec<&'static str> {
    RECIPES.iter().map(|(n, _)| *n).collect()
}

/// A catalog covariant `C<degree>,<order>` (or an alias such as `f`, `H`).
pub fn grace_young(name: &str) -> Result<Covariant, CovariantError> {
    let key = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, k)| *k);
    let (recipe, cell) = cells().get(key).ok_or_else(|| CovariantError::UnknownName(name.to_string()))?;
    Ok(cell.get_or_init(|| build(*recipe)).clone())
}

/// The Hessian `(f, f)_2`, content 1.
pub fn hessian() -> Covariant {
    grace_young("C2,8").expect("catalog entry")
}

/// Catalog covariants, the invariants `A..E` and `AB-3C`.
pub fn resolve(name: &str) -> Result<Covariant, CovariantError> {
    if let Ok(n) = name.parse::<InvariantName>() {
        return Ok(invariant(n));
    }
    if matches!(name, "AB-3C" | "AB - 3C" | "psi6") {
        return Ok(combination_ab_minus_3c());
    }
    grace_young(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_generators() {
        let f = universal_sextic();
        assert_eq!(grace_young("C1,6").unwrap(), f);
        let c20 = grace_young("C2,0").unwrap();
        assert_eq!((c20.degree(), c20.order()), (2, 0));
        let c32 = grace_young("C3,2").unwrap();
        assert_eq!((c32.degree(), c32.order()), (3, 2));
        assert!(matches!(grace_young("C99,1"), Err(CovariantError::UnknownName(_))));
    }

    #[test]
    fn low_degree_catalog_is_graded_and_covariant() {
        for (name, _) in RECIPES.iter().take(18) {
            let c = grace_young(name).unwrap();
            let (d, j) = name[1..].trim_end_matches(['a', 'b']).split_once(',').unwrap();
            assert_eq!((c.degree(), c.order()), (d.parse().unwrap(), j.parse().unwrap()), "{name}");
            assert!(!c.is_zero(), "{name} vanishes");
            assert!(c.certificate(), "{name}");
        }
    }

    #[test]
    fn hessian_is_canonical() {
        let h = hessian();
        assert_eq!((h.degree(), h.order()), (2, 8));
        assert_eq!(h.primitive(), h);
    }
}
