#include <sympjet/sampling.hpp>

namespace sympjet
{

Rational RationalSampler::next()
{
    Rational r(static_cast<long>(m_rng() % 7) - 3);
    r /= static_cast<long>(1 + m_rng() % 3);
    return r;
}

Rational RationalSampler::nonzero()
{
    Rational r = next();
    while (is_zero(r)) {
        r = next();
    }
    return r;
}

bool RationalSampler::coin(unsigned one_in)
{
    return m_rng() % one_in == 0;
}

Jet random_jet(RationalSampler &rs, const VariableSpace &space, unsigned order, unsigned min_degree, unsigned sparsity)
{
    Jet f(space, order);
    const std::size_t first = min_degree == 0 ? 0 : f.table().count_up_to(min_degree - 1);
    for (std::size_t k = first; k < f.size(); ++k) {
        if (rs.coin(sparsity)) {
            f.coeff(k) = rs.next();
        }
    }
    return f;
}

FormJet random_closed_form(RationalSampler &rs, const VariableSpace &space, unsigned order)
{
    std::vector<Jet> coeffs;
    for (std::size_t i = 0; i < space.dim(); ++i) {
        coeffs.push_back(random_jet(rs, space, order + 1, 2, 3));
    }
    FormJet w(space, 2, order);
    const Jet one = Jet::constant(space, order, 1);
    if (space.kind() == SpaceKind::Constrained) {
        w.add_term({0, 1}, one);
    }
    for (unsigned i = 1; i <= space.n(); ++i) {
        w.add_term({space.p_index(i), space.q_index(i)}, one);
    }
    return w + exterior_derivative(FormJet::one_form(coeffs));
}

MapJet random_normal_shaped(RationalSampler &rs, unsigned n, unsigned order)
{
    const VariableSpace s = VariableSpace::symplectic(n);
    std::vector<Jet> comps;
    for (unsigned i = 1; i <= n; ++i) {
        // P_i = p_i + sum over generators q1, p1, ..., p_{i-1}
        Jet p = Jet::variable(s, order, s.p_index(i));
        if (i > 1) {
            const IdealSpec ip = IdealSpec::omega(s, 2 * i - 2);
            for (auto g : ip.generators()) {
                p += Jet::variable(s, order, g) * random_jet(rs, s, order - 1, 0, 3);
            }
        }
        Jet q = Jet::variable(s, order, s.q_index(i)) * rs.nonzero();
        const IdealSpec iq = IdealSpec::omega(s, 2 * i - 1);
        for (auto g : iq.generators()) {
            const unsigned lowest = g == s.q_index(i) ? 1 : 0;
            q += Jet::variable(s, order, g) * random_jet(rs, s, order - 1, lowest, 3);
        }
        if (i == 1) {
            comps.push_back(Jet::variable(s, order, s.p_index(1)));
        } else {
            comps.push_back(p.truncated(order));
        }
        comps.push_back(q.truncated(order));
    }
    return MapJet(s, std::move(comps));
}

Jet random_unit(RationalSampler &rs, const VariableSpace &space, unsigned order)
{
    Jet u = random_jet(rs, space, order, 1, 2);
    u.coeff(0) = rs.nonzero();
    return u;
}

} // namespace sympjet
