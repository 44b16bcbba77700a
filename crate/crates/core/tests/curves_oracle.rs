use normalhst::curves::{check_348, decompose_pattern, enumerate_normal_loops, CurvePattern};
use normalhst::Limits;
use normalhst_oracles::curves::loop_classes;

#[test]
fn census_matches_word_search_to_twenty() {
    let census = enumerate_normal_loops(20, &Limits::default()).unwrap();
    let ours: Vec<(usize, Vec<usize>, usize)> =
        census.classes.iter().map(|c| (c.length, c.word.clone(), c.size)).collect();
    let theirs: Vec<(usize, Vec<usize>, usize)> =
        loop_classes(20).into_iter().map(|c| (c.length, c.word, c.size)).collect();
    assert_eq!(ours, theirs);
    let lengths: std::collections::BTreeSet<usize> = ours.iter().map(|c| c.0).collect();
    assert_eq!(lengths.into_iter().collect::<Vec<_>>(), vec![3, 4, 8, 12, 16, 20]);
}

#[test]
fn every_census_loop_decomposes_to_itself() {
    for lp in enumerate_normal_loops(16, &Limits::default()).unwrap().loops {
        let d = decompose_pattern(&lp.pattern).unwrap();
        assert_eq!(d.lengths, vec![lp.length]);
        assert_eq!(d.loops[0].word, lp.class);
        assert_eq!(check_348(&lp.pattern).unwrap().pass, lp.length <= 8);
    }
    assert!(decompose_pattern(&CurvePattern::default()).unwrap().loops.is_empty());
}
