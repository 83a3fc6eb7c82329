use super::GroupPresentation;
use crate::error::{Error, Result};

pub const TABLE_NAMES: [&str; 6] = ["unknot", "trefoil", "figure8", "5_2", "hopf", "whitehead"];

/// Two-generator, one-relator presentations (one generator for the unknot)
/// of the tabulated knot and link groups, with their metadata.
pub fn knot_table(name: &str) -> Result<GroupPresentation> {
    // (generators, relators, b0, Thurston norm for knots, linking number for links)
    let (gens, rels, b0, x, lk): (usize, &[&str], usize, Option<i64>, Option<i64>) = match name {
        "unknot" => (1, &[], 1, Some(0), None),
        "trefoil" => (2, &["a b a B A B"], 1, Some(1), None),
        "figure8" => (2, &["a b A B a B A b a B"], 1, Some(1), None),
        "5_2" => (2, &["a b a B A b a B A B a b A B"], 1, Some(1), None),
        "hopf" => (2, &["a b A B"], 2, None, Some(1)),
        "whitehead" => (2, &["a b a B A B a b A B A b a b A B"], 2, None, Some(0)),
        _ => return Err(Error::UnknownKnot(name.to_string())),
    };
    let mut p = GroupPresentation::from_words(gens, rels)?;
    p.name = Some(name.to_string());
    p.boundary_components = Some(b0);
    p.thurston_norm = x;
    if let Some(v) = lk {
        p.meridians = Some(vec![0, 1]);
        p.linking = Some(vec![vec![0, v], vec![v, 0]]);
    } else {
        p.meridians = Some(vec![0]);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_has_deficiency_one() {
        for name in TABLE_NAMES {
            let p = knot_table(name).unwrap();
            assert_eq!(p.deficiency(), 1, "{name}");
            assert_eq!(GroupPresentation::parse(&p.to_text()).unwrap(), p);
        }
        assert_eq!(knot_table("trefoil").unwrap().relator_text(0), "a b a B A B");
        assert!(matches!(knot_table("7_4"), Err(Error::UnknownKnot(_))));
    }
}
