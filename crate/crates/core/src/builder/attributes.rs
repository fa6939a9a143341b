use crate::dtd::{AttributeKind, AttributeSpec, DefaultDecl};
use crate::graph::{AttributeRow, RowKind};

pub fn row_kind(kind: &AttributeKind) -> RowKind {
    match kind {
        AttributeKind::CData => RowKind::Cdata,
        AttributeKind::Id => RowKind::Id,
        AttributeKind::IdRef => RowKind::Idref,
        AttributeKind::IdRefs => RowKind::Idrefs,
        AttributeKind::Enumeration(_) => RowKind::Enumeration,
        AttributeKind::NmToken => RowKind::Nmtoken,
        AttributeKind::NmTokens => RowKind::Nmtokens,
        AttributeKind::Notation(_) => RowKind::Notation,
        AttributeKind::Entity => RowKind::Entity,
        AttributeKind::Entities => RowKind::Entities,
    }
}

/// Whether the notation has no dedicated form for this kind (it is drawn like CDATA).
pub fn is_generic_kind(kind: &AttributeKind) -> bool {
    matches!(
        kind,
        AttributeKind::NmToken
            | AttributeKind::NmTokens
            | AttributeKind::Notation(_)
            | AttributeKind::Entity
            | AttributeKind::Entities
    )
}

/// Display form of one attribute.
///
/// | declaration                      | form          |
/// |----------------------------------|---------------|
/// | `nom-cl CDATA #REQUIRED`         | `nom-cl`      |
/// | `date-modif CDATA #IMPLIED`      | `%date-modif` |
/// | `pseudo ID #REQUIRED`            | `pseudo`, underlined |
/// | `client IDREF #REQUIRED`         | `#client`     |
/// | `clients IDREFS #REQUIRED`       | `#(clients)`  |
/// | `stars (0\|1\|2) #REQUIRED`      | `{stars}`     |
/// | `stars CDATA '0'`                | `stars/'0'`   |
///
/// The forms compose, e.g. `stars (0|1|2) '0'` gives `{stars}/'0'`.
pub fn format_attribute(spec: &AttributeSpec) -> AttributeRow {
    let mut text = spec.name.clone();
    match &spec.kind {
        AttributeKind::Enumeration(_) => text = format!("{{{text}}}"),
        AttributeKind::IdRef => text = format!("#{text}"),
        AttributeKind::IdRefs => text = format!("#({text})"),
        _ => {}
    }
    if spec.default == DefaultDecl::Implied {
        text.insert(0, '%');
    }
    if let DefaultDecl::Default(v) | DefaultDecl::Fixed(v) = &spec.default {
        text.push_str(&format!("/'{v}'"));
    }
    AttributeRow {
        name: spec.name.clone(),
        kind: row_kind(&spec.kind),
        text,
        underline: spec.kind == AttributeKind::Id,
        fixed: matches!(spec.default, DefaultDecl::Fixed(_)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    fn fmt(name: &str, kind: AttributeKind, default: DefaultDecl) -> AttributeRow {
        format_attribute(&AttributeSpec::new(name, kind, default))
    }

    fn stars() -> AttributeKind {
        AttributeKind::Enumeration((0..=5).map(|i| i.to_string()).collect())
    }

    #[test]
    fn underline_only_for_id() {
        assert!(fmt("pseudo", AttributeKind::Id, DefaultDecl::Required).underline);
        assert!(!fmt("nom", AttributeKind::CData, DefaultDecl::Required).underline);
    }

    #[test]
    fn implied_reference_composes() {
        assert_eq!(
            fmt("client", AttributeKind::IdRef, DefaultDecl::Implied).text,
            "%#client"
        );
        assert_eq!(
            fmt("acteurs", AttributeKind::IdRefs, DefaultDecl::Implied).text,
            "%#(acteurs)"
        );
        assert_eq!(fmt("stars", stars(), DefaultDecl::Implied).text, "%{stars}");
    }

    #[test]
    fn fixed_renders_like_default_with_flag() {
        let row = fmt("v", AttributeKind::CData, DefaultDecl::Fixed("1.0".into()));
        assert_eq!(row.text, "v/'1.0'");
        assert!(row.fixed);
    }

    #[test]
    fn generic_kinds_render_like_cdata() {
        assert_eq!(
            fmt("t", AttributeKind::NmTokens, DefaultDecl::Implied).text,
            "%t"
        );
        assert_eq!(
            fmt(
                "n",
                AttributeKind::Notation(vec!["gif".into()]),
                DefaultDecl::Required
            )
            .text,
            "n"
        );
    }

    fn any_kind() -> impl Strategy<Value = AttributeKind> {
        prop_oneof![
            Just(AttributeKind::CData),
            Just(AttributeKind::Id),
            Just(AttributeKind::IdRef),
            Just(AttributeKind::IdRefs),
            Just(stars()),
        ]
    }

    fn any_default() -> impl Strategy<Value = DefaultDecl> {
        prop_oneof![
            Just(DefaultDecl::Required),
            Just(DefaultDecl::Implied),
            Just(DefaultDecl::Default("0".into())),
            Just(DefaultDecl::Default("1".into())),
        ]
    }

    proptest! {
        // Distinct (kind, default) pairs with distinct forms never collide;
        // ID and CDATA share text and differ only by the underline flag.
        #[test]
        fn forms_do_not_collide(name in "[a-z][a-z-]{0,8}") {
            let mut seen: HashMap<(String, bool), (AttributeKind, DefaultDecl)> = HashMap::new();
            let kinds = [AttributeKind::CData, AttributeKind::Id, AttributeKind::IdRef, AttributeKind::IdRefs, stars()];
            let defaults = [DefaultDecl::Required, DefaultDecl::Implied, DefaultDecl::Default("0".into()), DefaultDecl::Default("1".into())];
            for k in &kinds {
                for d in &defaults {
                    let row = fmt(&name, k.clone(), d.clone());
                    if let Some(prev) = seen.insert((row.text.clone(), row.underline), (k.clone(), d.clone())) {
                        prop_assert!(false, "{:?} and {:?} both render {}", prev, (k, d), row.text);
                    }
                }
            }
        }

        #[test]
        fn row_keeps_name_and_kind(name in "[a-z][a-z0-9-]{0,8}", kind in any_kind(), default in any_default()) {
            let row = fmt(&name, kind.clone(), default);
            prop_assert_eq!(&row.name, &name);
            prop_assert_eq!(row.kind, row_kind(&kind));
            prop_assert!(row.text.contains(&name));
        }
    }
}
