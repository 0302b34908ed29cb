use clusterc2::cluster_seed::*;
use clusterc2::flags_sl::*;
use clusterc2::root_system::*;
use clusterc2::sampling::*;

fn main() {
    let cd = cartan_data(Series::A, 2).unwrap();
    let word = WeylWord::new(vec![0, 1, 0]);
    let seed = triangle_seed(&cd, &word, [1, 2, 3]).unwrap();
    let mut rng = rng_from_seed(61);
    for _ in 0..4 {
        let cfg = random_generic_config(&mut rng, 3, &[1, 2, 3], 9);
        let Ok(values) = evaluate_seed(&seed, &cfg) else { continue };
        let center = seed.quiver.unfrozen()[0];
        let mut m = vec![vec![clusterc2::ratutil::int(0); 3]; 3];
        for r in 0..3 {
            m[r][0] = cfg[&1].vecs[0][r].clone();
            m[r][1] = cfg[&2].vecs[0][r].clone();
            m[r][2] = cfg[&3].vecs[0][r].clone();
        }
        println!("center value = {}", values[center]);
        println!("det(e1,f1,g1) = {}", mat_det(&m));
        println!("ratio = {}", values[center].clone() / mat_det(&m));
        // also print all labels
        let atoms = seed.atomic_labels().unwrap();
        for (v, a) in atoms.iter().enumerate() {
            println!("  {} = {}", a, values[v]);
        }
        break;
    }
}
