use wavecov::boost::rotation_constraints;

fn main() {
    for order in 2..=4 {
        let rc = rotation_constraints(order).unwrap();
        println!("order {order}: {} equations, rank {}, {} free", rc.system.len(), rc.rank, rc.free.len());
        let free: Vec<String> = rc.free.iter().map(|s| s.to_string()).collect();
        println!("  free: {}", free.join(" "));
        println!("  reduced: {}", rc.reduced);
    }
}
