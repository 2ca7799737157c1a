use supvkit::analysis::*;
use supvkit::*;

fn diagnose(seed: u64, max_states: usize, max_events: usize) {
    let limits = InstanceLimits { max_states, max_events };
    let inst = random_instance(seed, &limits);
    let sup = supconrobs(&inst.plant, &inst.spec, &inst.mask).unwrap();
    if sup.is_empty() { return; }
    let al = inst.plant.alphabet().clone();
    let aut = sup.automaton();
    let n = aut.state_count();
    let rel = consistency_relation(&sup);
    println!("seed {seed}: sup={} unobs={:?}", n,
        inst.mask.unobservable_ids().map(|e| al.label(e).to_string()).collect::<Vec<_>>());

    // per-event standalone feasibility of merging all its edges
    for e in al.ids() {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x; while p[r] != r { r = p[r]; }
            let mut a = x; while p[a] != r { let nx = p[a]; p[a] = r; a = nx; } r
        }
        let mut work: Vec<(usize, usize)> = (0..n).filter_map(|s| aut.step(s, e).map(|t| (s, t))).collect();
        if work.is_empty() { println!("  event {}: absent", al.label(e)); continue; }
        let mut ok = true;
        while let Some((a, b)) = work.pop() {
            let ra = find(&mut parent, a); let rb = find(&mut parent, b);
            if ra == rb { continue; }
            let ma: Vec<usize> = (0..n).filter(|&s| find(&mut parent, s) == ra).collect();
            let mb: Vec<usize> = (0..n).filter(|&s| find(&mut parent, s) == rb).collect();
            for &u in &ma { for &v in &mb { if !rel.consistent(u, v) { ok = false; } } }
            if !ok { break; }
            let (r, c) = (ra.min(rb), ra.max(rb));
            parent[c] = r;
            let merged: Vec<usize> = ma.into_iter().chain(mb).collect();
            for e2 in al.ids() {
                let mut tg: Vec<usize> = merged.iter().filter_map(|&s| aut.step(s, e2)).map(|t| find(&mut parent, t)).collect();
                tg.sort_unstable(); tg.dedup();
                for w in tg.windows(2) { work.push((w[0], w[1])); }
            }
        }
        println!("  event {} ({}): standalone merge feasible = {}",
            al.label(e),
            if inst.mask.is_observable(e) { "obs" } else { "HIDDEN" },
            ok);
    }
}

fn main() {
    diagnose(489, 10, 5);
    diagnose(1582, 10, 5);
    diagnose(85, 14, 6);
    diagnose(468, 14, 6);
}
