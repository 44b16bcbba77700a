use normalhst::thin::{exchange_move, legal_exchanges, thin_position_search, width, SearchSpace, ThinSearch};
use normalhst_oracles::width as oracle;

#[test]
fn widths_match_oracle() {
    for n in [0, 2, 4, 6, 8] {
        for p in oracle::all_presentations(n) {
            let w = width(&p).unwrap();
            assert_eq!(w.width, oracle::width(&p));
            assert_eq!(w.profile, oracle::levels(&p));
        }
    }
}

#[test]
fn search_minimum_matches_oracle() {
    for n in [2, 4, 6] {
        let start = oracle::all_presentations(n).pop().unwrap();
        for single in [false, true] {
            let cfg = ThinSearch { space: SearchSpace::AllPresentations, single_component: single, budget: 1 << 20 };
            let r = thin_position_search(&start, &cfg).unwrap();
            assert!(r.certified);
            assert_eq!(r.min_width, oracle::minimum_width(n, single), "{n} events, single {single}");
        }
    }
}

#[test]
fn exchanges_shrink_width_by_four() {
    let mut legal = 0;
    for n in [2, 4, 6] {
        for p in oracle::all_presentations(n) {
            let moves = legal_exchanges(&p);
            legal += moves.len();
            for (b, x) in moves {
                assert_eq!(oracle::width(&x.presentation) + 4, oracle::width(&p));
                assert_eq!(exchange_move(&p, b, b + 1).unwrap(), x);
            }
        }
    }
    assert!(legal > 0);
}

#[test]
fn exchange_search_never_beats_exhaustive() {
    for p in oracle::all_presentations(6) {
        let cfg = ThinSearch { space: SearchSpace::Exchanges, single_component: false, budget: 10_000 };
        let r = thin_position_search(&p, &cfg).unwrap();
        assert!(r.certified);
        assert!(r.min_width.unwrap() >= oracle::minimum_width(6, false).unwrap());
        assert!(r.min_width.unwrap() <= oracle::width(&p));
    }
}
