use oxford_core::ingest::{
    emit_edge_list, emit_matrix, fixture, fixtures, parse_auto, parse_edge_list, parse_matrix,
    published_summary, FIXTURE_NAMES,
};

#[test]
fn observed_census_matches_published() {
    for d in fixtures() {
        let published = published_summary(&d.name).unwrap();
        assert_eq!(d.observed_trees(), published.observed, "{}", d.name);
    }
}

#[test]
fn matrix_round_trip() {
    for name in FIXTURE_NAMES {
        let d = fixture(name).unwrap();
        let text = emit_matrix(&d).unwrap();
        let back = parse_matrix(&text).unwrap();
        assert_eq!(
            back.graph.canonical_edges(),
            d.graph.canonical_edges(),
            "{name}"
        );
        assert_eq!(back.left_labels, d.left_labels);
        assert_eq!(back.right_labels, d.right_labels);
        assert_eq!(
            parse_auto(&text).unwrap().graph.canonical_edges(),
            d.graph.canonical_edges()
        );
    }
}

#[test]
fn edge_list_round_trip() {
    for name in FIXTURE_NAMES {
        let d = fixture(name).unwrap();
        let text = emit_edge_list(&d).unwrap();
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back.graph, d.graph, "{name}");
        assert_eq!(back.summary(), d.summary());
    }
}
