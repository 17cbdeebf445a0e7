use std::time::Instant;

use matchstick::assemble::ring_assemble;
use matchstick::fixtures::load_fixture;
use matchstick::io::*;
use matchstick::linkage::*;
use matchstick::svg::{export_svg, SvgOptions};
use matchstick::verify::{verify, ToleranceProfile};
use matchstick::{Error, UnitGraph};

fn g2_ring() -> UnitGraph {
    let t = build_template(&load_fixture("g2").unwrap()).unwrap();
    let spec = RingSpec::new(169).unwrap();
    let r = solve(&t, &spec, &t.initial_state(&spec), None).unwrap();
    ring_assemble(&solved_base(&t, &r).unwrap(), &spec).unwrap()
}

/// Inset windows `[x0, y0, x1, y1]` in graph coordinates.
fn inset_windows(svg: &str) -> Vec<[f64; 4]> {
    svg.lines()
        .filter(|l| l.starts_with("<svg x="))
        .map(|l| {
            let vb = l
                .split("viewBox=\"")
                .nth(1)
                .unwrap()
                .split('"')
                .next()
                .unwrap();
            let v: Vec<f64> = vb.split(' ').map(|t| t.parse().unwrap()).collect();
            [v[0], -(v[1] + v[3]), v[0] + v[2], -v[1]]
        })
        .collect()
}

#[test]
fn g2_fixture_round_trips() {
    let g = load_fixture("g2").unwrap();
    let text = graph_to_string(&g).unwrap();
    let back = graph_from_str(&text).unwrap();
    assert_eq!(back, g);
    assert_eq!(graph_to_string(&back).unwrap(), text);
    assert_eq!(
        stored_precision(&text),
        Some(matchstick::scalar::precision())
    );
}

#[test]
fn files_round_trip_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g1.msf");
    let mut g = load_fixture("g1").unwrap();
    g.set_meta("x-note", "kept as is");
    write_graph(&g, &path).unwrap();
    let back = read_graph(&path).unwrap();
    assert_eq!(back.meta_value("x-note"), Some("kept as is"));
    assert_eq!(back, g);
}

#[test]
fn empty_graph_file() {
    let text = graph_to_string(&UnitGraph::empty()).unwrap();
    assert!(!text.contains('['));
    assert_eq!(graph_from_str(&text).unwrap().num_vertices(), 0);
}

#[test]
fn malformed_files_report_lines() {
    let text = "msf-graph 1\nprecision 60\n[vertices]\n0 0 0\n1 1 0\n[edges]\n0 x\n";
    match graph_from_str(text) {
        Err(Error::Parse { line, message }) => {
            assert_eq!(line, 7);
            assert!(message.contains("edge"), "{message}");
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        graph_from_str("msf-graph 9\n"),
        Err(Error::Version { .. })
    ));
    assert!(matches!(
        read_graph("/nonexistent/graph.msf"),
        Err(Error::Io(_))
    ));
}

#[test]
fn ring_reload_gives_the_same_report() {
    let ring = g2_ring();
    let prof = ToleranceProfile::solved();
    let text = graph_to_string(&ring).unwrap();
    let back = graph_from_str(&text).unwrap();
    assert_eq!(
        verify(&ring, &prof).to_json().unwrap(),
        verify(&back, &prof).to_json().unwrap()
    );
}

#[test]
fn unit_triangle_svg() {
    let h = matchstick::Scalar::from_i64(3).sqrt() / 2.0;
    let v = vec![
        matchstick::Point::from_f64(0.0, 0.0),
        matchstick::Point::from_f64(1.0, 0.0),
        matchstick::Point::new(matchstick::Scalar::from_f64(0.5), h),
    ];
    let g = UnitGraph::new(
        v,
        [(0, 1), (1, 2), (0, 2)],
        [[0, 1, 2]],
        Default::default(),
        Default::default(),
    )
    .unwrap();
    let svg = export_svg(&g, &SvgOptions::default());
    assert_eq!(svg.matches("<line ").count(), 3);
    assert_eq!(svg.matches("<circle ").count(), 3);
}

#[test]
fn g2_inset_sits_on_the_gh_gap() {
    let g = load_fixture("g2").unwrap();
    let svg = export_svg(&g, &SvgOptions::default());
    let windows = inset_windows(&svg);
    assert_eq!(windows.len(), 4);
    let inside =
        |w: &[f64; 4], p: [f64; 2]| w[0] < p[0] && p[0] < w[2] && w[1] < p[1] && p[1] < w[3];
    let (gv, hv) = (
        g.vertex(g.label("G").unwrap()).to_f64(),
        g.vertex(g.label("H").unwrap()).to_f64(),
    );
    assert!(
        windows.iter().any(|w| inside(w, gv) && inside(w, hv)),
        "{windows:?}"
    );
    let none = export_svg(
        &g,
        &SvgOptions {
            insets: 0,
            ..Default::default()
        },
    );
    assert!(inset_windows(&none).is_empty());
}

#[test]
fn ring_svg_lists_every_edge() {
    let ring = g2_ring();
    let start = Instant::now();
    let svg = export_svg(&ring, &SvgOptions::default());
    assert!(start.elapsed().as_secs() < 10);
    assert_eq!(svg.matches("<line ").count(), ring.num_edges());
    assert_eq!(svg.matches("<circle ").count(), ring.num_vertices());
    assert_eq!(ring.num_edges(), 19266);
}
