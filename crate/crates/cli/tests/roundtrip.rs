use proptest::prelude::*;

use qinstanton::expr::{evaluate, parse};

fn atom() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("a".to_string()),
        Just("A".to_string()),
        Just("b".to_string()),
        Just("B".to_string()),
        Just("q".to_string()),
        (0u32..20).prop_map(|n| n.to_string()),
        (0u32..20, 1u32..9).prop_map(|(n, d)| format!("{n}/{d}")),
    ]
}

/// Source text drawn from the grammar, with optional `*`, spacing and
/// redundant parentheses.
fn body() -> impl Strategy<Value = String> {
    atom().prop_recursive(4, 24, 4, |inner| {
        let factor = (inner.clone(), proptest::option::of(-3i32..4)).prop_map(|(a, e)| match e {
            Some(e) => format!("({a})^{e}"),
            None => format!("({a})"),
        });
        prop_oneof![
            factor.clone(),
            (factor.clone(), factor.clone(), any::<bool>())
                .prop_map(|(x, y, star)| format!("{x}{}{y}", if star { " * " } else { " " })),
            (inner.clone(), inner.clone(), any::<bool>())
                .prop_map(|(x, y, plus)| format!("{x} {} {y}", if plus { '+' } else { '-' })),
            inner.prop_map(|x| format!("(-({x}))")),
        ]
    })
}

/// A leading minus is only allowed in front of a whole sum.
fn source() -> impl Strategy<Value = String> {
    (body(), any::<bool>()).prop_map(|(s, neg)| if neg { format!("-{s}") } else { s })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn print_then_parse_is_identity(s in source()) {
        let tree = parse(&s).unwrap();
        let printed = tree.to_string();
        let again = parse(&printed).unwrap();
        prop_assert_eq!(&again, &tree, "{} printed as {}", s, printed);
        prop_assert_eq!(again.to_string(), printed);
    }

    #[test]
    fn printing_preserves_value(s in source()) {
        let tree = parse(&s).unwrap();
        let budget = 20_000;
        if let Ok(x) = evaluate(&tree, budget) {
            let y = evaluate(&parse(&tree.to_string()).unwrap(), budget).unwrap();
            prop_assert_eq!(x, y);
        }
    }
}
