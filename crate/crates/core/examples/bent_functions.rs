//! Bent functions through the difference-set property of their support:
//! inner products, direct sums, negation, and a count over all t = 4
//! functions cross-checked against the Walsh spectrum.

use diffset::bent::{is_bent_ds, walsh_oracle, BooleanFunction};

fn main() -> diffset::Result<()> {
    let ip2 = BooleanFunction::inner_product(2)?;
    let r = is_bent_ds(&ip2)?;
    println!("IP(2) = {} ({}): bent {}, support parameters (16, {}, {})", ip2.to_bit_string(), ip2.to_hex(), r.bent, r.k, r.lambda.unwrap());

    let big = ip2.direct_sum(&BooleanFunction::inner_product(1)?)?;
    let r = is_bent_ds(&big)?;
    println!("IP(2) + IP(1) on 6 variables: bent {}, weight {}, sign {:?}", r.bent, r.k, r.sign);

    let neg = ip2.negation();
    let r = is_bent_ds(&neg)?;
    println!("negated IP(2): weight {}, sign {:?}, bent {}", r.k, r.sign, r.bent);

    let f = BooleanFunction::parse(4, "0x8001")?;
    let r = is_bent_ds(&f)?;
    println!("{}: bent {}", f.to_bit_string(), r.bent);

    let mut count = 0;
    for word in 0u64..1 << 16 {
        let f = BooleanFunction::from_fn(4, |x| word >> x & 1 == 1)?;
        let ds = is_bent_ds(&f)?.bent;
        assert_eq!(ds, walsh_oracle(&f).bent);
        count += ds as usize;
    }
    println!("bent functions on 4 variables: {count}");
    Ok(())
}
