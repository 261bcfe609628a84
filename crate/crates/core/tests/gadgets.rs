use bcolor::{
    gen_classic, gen_havet, gen_star_pad_delta, gen_star_pad_m, havet_coloring, m_degree, solve_exact, verify_certificate,
    BCertificate, Color, Graph,
};

/// Proper 3-edge-coloring by backtracking over the edges in order.
fn three_edge_coloring(g: &Graph) -> Option<Vec<Color>> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut colors = vec![0; edges.len()];
    fn go(edges: &[(usize, usize)], colors: &mut Vec<Color>, i: usize) -> bool {
        if i == edges.len() {
            return true;
        }
        let (a, b) = edges[i];
        for c in 1..=3 {
            let clash = (0..i).any(|j| colors[j] == c && {
                let (x, y) = edges[j];
                x == a || x == b || y == a || y == b
            });
            if !clash {
                colors[i] = c;
                if go(edges, colors, i + 1) {
                    return true;
                }
            }
        }
        colors[i] = 0;
        false
    }
    go(&edges, &mut colors, 0).then_some(colors)
}

fn check_havet_forward(g: &Graph) {
    let inst = gen_havet(g).unwrap();
    let n = g.n();
    let h = &inst.graph;
    assert_eq!(h.n(), n + g.edge_count() + 4 * n + 13);
    assert_eq!(h.max_degree(), n + 3);
    assert_eq!(m_degree(h), n + 4);
    assert_eq!(h.vertices().filter(|&v| h.degree(v) == n + 3).count(), n + 4);
    for a in 0..n {
        for b in a + 1..n {
            assert!(h.has_edge(a, b));
        }
    }
    for j in 0..g.edge_count() {
        assert_eq!(h.neighbors(n + j).iter().filter(|&&w| w < n).count(), 2);
    }
    let edge_colors = three_edge_coloring(g).expect("class one cubic graph");
    let colors = havet_coloring(g, &edge_colors).unwrap();
    let cert = BCertificate::from_coloring(h, inst.k, colors).expect("forward construction is a b-coloring");
    assert!(verify_certificate(h, inst.k, &cert).passed());
}

#[test]
fn havet_forward_direction() {
    check_havet_forward(&Graph::complete(4));
    check_havet_forward(&gen_classic("complete-bipartite:3,3").unwrap());
    // triangular prism
    let prism = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
    check_havet_forward(&prism);
    assert_eq!(gen_havet(&gen_classic("complete-bipartite:3,3").unwrap()).unwrap().graph.n(), 52);
}

#[test]
fn star_pads_follow_three_colorability() {
    let k5 = Graph::complete(5);
    let c9 = gen_classic("circulant:9:1,2").unwrap();
    for (base, colorable) in [(&k5, false), (&c9, true)] {
        let d = gen_star_pad_delta(base, 1).unwrap();
        assert_eq!(d.graph.max_degree(), 4);
        assert_eq!(solve_exact(&d.graph, 3).unwrap().is_yes(), colorable);
        let m = gen_star_pad_m(base, 1).unwrap();
        assert_eq!(m_degree(&m.graph), 5);
        assert_eq!(solve_exact(&m.graph, 3).unwrap().is_yes(), colorable);
    }
}
