#include "core/catalog.hpp"

#include <map>
#include <mutex>

namespace rsw {

namespace {
constexpr std::array<i64, 5> kCurve11{0, -1, 1, -10, -20};  // y^2+y = x^3-x^2-10x-20
}

const std::vector<NewformSpec>& catalog() {
    static const std::vector<NewformSpec> forms = [] {
        std::vector<NewformSpec> v;

        NewformSpec delta;
        delta.label = "delta";
        delta.level = 1;
        delta.weight = 12;
        delta.source = CoeffSource::eta_product;
        delta.eta = {{1, 24}};
        v.push_back(delta);

        NewformSpec eta11;
        eta11.label = "eta11";
        eta11.level = 11;
        eta11.weight = 2;
        eta11.source = CoeffSource::eta_product;
        eta11.eta = {{1, 2}, {11, 2}};
        eta11.crosscheck_curve = kCurve11;
        v.push_back(eta11);

        NewformSpec eta5;
        eta5.label = "eta5";
        eta5.level = 5;
        eta5.weight = 4;
        eta5.source = CoeffSource::eta_product;
        eta5.eta = {{1, 4}, {5, 4}};
        v.push_back(eta5);

        NewformSpec ell11;
        ell11.label = "ell11";
        ell11.level = 11;
        ell11.weight = 2;
        ell11.source = CoeffSource::elliptic_curve;
        ell11.curve = kCurve11;
        v.push_back(ell11);

        return v;
    }();
    return forms;
}

const NewformSpec& catalog_form(const std::string& label) {
    for (const NewformSpec& s : catalog())
        if (s.label == label) return s;
    throw std::invalid_argument("unknown form label: " + label);
}

std::shared_ptr<const EigenvalueTable> catalog_table(const std::string& label, u64 min_n) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const EigenvalueTable>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(label);
    if (it != cache.end() && it->second->size() >= min_n) return it->second;
    const NewformSpec& spec = catalog_form(label);
    // grow in binary steps so repeated callers share one large build
    u64 n = std::max<u64>(min_n, 1024);
    if (it != cache.end()) n = std::max(n, it->second->size() * 2);
    auto table = std::make_shared<const EigenvalueTable>(build_table(spec, n));
    cache[label] = table;
    return table;
}

}  // namespace rsw
