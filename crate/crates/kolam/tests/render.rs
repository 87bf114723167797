use std::collections::BTreeSet;

use kolam::svg::{closed_path_count, render_svg, SvgStyle};
use kolam_core::{evaluate_assignment, layout, Assignment, MorseProgram};

fn parse(svg: &str) -> roxmltree::Document<'_> {
    roxmltree::Document::parse(svg).expect("well-formed SVG")
}

#[test]
fn closed_paths_match_components_for_every_n1_drawing() {
    let program = MorseProgram::diamond(1);
    for index in 0..16 {
        let a = Assignment::from_index(index, 4);
        let svg = render_svg(1, &a, &SvgStyle::default()).unwrap();
        let doc = parse(&svg);
        let paths = doc.descendants().filter(|n| n.has_tag_name("path")).count();
        assert_eq!(paths, closed_path_count(&svg));
        assert_eq!(paths, evaluate_assignment(&program, &a).unwrap(), "{index:x}");
    }
}

#[test]
fn closed_paths_match_components_on_sampled_n2_drawings() {
    let program = MorseProgram::diamond(2);
    for index in (0..1u64 << 16).step_by(251) {
        let a = Assignment::from_index(index, 16);
        let svg = render_svg(2, &a, &SvgStyle::default()).unwrap();
        assert_eq!(closed_path_count(&svg), evaluate_assignment(&program, &a).unwrap(), "{index:04x}");
    }
}

#[test]
fn single_and_three_loop_n1_drawings() {
    let one = render_svg(1, &Assignment::from_index(0, 4), &SvgStyle::default()).unwrap();
    assert_eq!(closed_path_count(&one), 1);
    let three = render_svg(1, &Assignment::from_hex("9", 4).unwrap(), &SvgStyle::default()).unwrap();
    assert_eq!(closed_path_count(&three), 3);
}

#[test]
fn dots_are_drawn_as_circles() {
    for n in 1..=3 {
        let sites = MorseProgram::diamond(n).site_count();
        let svg = render_svg(n, &Assignment::from_index(0, sites), &SvgStyle::default()).unwrap();
        let doc = parse(&svg);
        let circles = doc.descendants().filter(|n| n.has_tag_name("circle")).count();
        assert_eq!(circles, 2 * n * n + 2 * n + 1);
        assert_eq!(doc.root_element().attribute("version"), Some("1.1"));
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = Assignment::from_hex("2118", 16).unwrap();
    let first = render_svg(2, &a, &SvgStyle::default()).unwrap();
    for _ in 0..3 {
        assert_eq!(render_svg(2, &a, &SvgStyle::default()).unwrap(), first);
    }
}

#[test]
fn style_is_applied() {
    let style = SvgStyle { stroke: "red".into(), background: None, ..SvgStyle::default() };
    let svg = render_svg(1, &Assignment::from_index(0, 4), &style).unwrap();
    assert!(svg.contains("stroke=\"red\""));
    assert!(!svg.contains("<rect"));
}

#[test]
fn wrong_assignment_length_is_an_error() {
    assert!(render_svg(2, &Assignment::from_index(0, 4), &SvgStyle::default()).is_err());
}

#[test]
fn every_dot_is_surrounded_on_all_four_sides() {
    let geometry = layout(2);
    for index in (0..1u64 << 16).step_by(1021) {
        let curves = geometry.trace(&Assignment::from_index(index, 16)).unwrap();
        let visited: BTreeSet<_> = curves.iter().flat_map(|c| c.passes.iter().map(|p| p.at)).collect();
        for &(x, y) in &geometry.dots {
            for m in [(x, y + 1), (x - 1, y), (x + 1, y), (x, y - 1)] {
                assert!(visited.contains(&m), "{index:04x}: ({x}, {y})");
            }
        }
    }
}
