#include "wwtp/serialize.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace wwtp::marl {

namespace {

using nlohmann::json;

json mlp_to_json(const Mlp& net) {
    json j;
    j["sizes"] = net.sizes();
    j["head"] = net.head() == OutputHead::SquashToBox ? "squash" : "identity";
    if (net.head() == OutputHead::SquashToBox) {
        j["out_lo"] = net.out_lo();
        j["out_hi"] = net.out_hi();
    }
    json layers = json::array();
    for (int l = 0; l < net.num_layers(); ++l) {
        json layer;
        layer["weights"] = std::vector<double>(net.weights(l).begin(), net.weights(l).end());
        layer["biases"] = std::vector<double>(net.biases(l).begin(), net.biases(l).end());
        layers.push_back(std::move(layer));
    }
    j["layers"] = std::move(layers);
    return j;
}

Mlp mlp_from_json(const json& j) {
    const std::vector<int> sizes = j.at("sizes").get<std::vector<int>>();
    const std::string head = j.at("head").get<std::string>();
    Mlp net;
    if (head == "squash") {
        net = Mlp(sizes, OutputHead::SquashToBox, j.at("out_lo").get<double>(),
                  j.at("out_hi").get<double>());
    } else {
        net = Mlp(sizes, OutputHead::Identity);
    }
    const json& layers = j.at("layers");
    if (static_cast<int>(layers.size()) != net.num_layers())
        throw std::invalid_argument("agents json: layer count mismatch");
    for (int l = 0; l < net.num_layers(); ++l) {
        const auto w = layers[l].at("weights").get<std::vector<double>>();
        const auto b = layers[l].at("biases").get<std::vector<double>>();
        if (w.size() != net.weights(l).size() || b.size() != net.biases(l).size())
            throw std::invalid_argument("agents json: layer shape mismatch");
        std::copy(w.begin(), w.end(), net.weights(l).begin());
        std::copy(b.begin(), b.end(), net.biases(l).begin());
    }
    return net;
}

json range_to_json(const impacts::Range& r) {
    return json{{"min", r.min}, {"max", r.max}, {"set", r.set}};
}

impacts::Range range_from_json(const json& j) {
    impacts::Range r;
    r.min = j.at("min").get<double>();
    r.max = j.at("max").get<double>();
    r.set = j.at("set").get<bool>();
    return r;
}

}  // namespace

std::string agents_to_json(const Agents& agents, const impacts::NormalizationBounds& bounds,
                           const TrainConfig& tc) {
    json j;
    j["version"] = 1;
    json arr = json::array();
    for (const AgentNets& a : agents) {
        json ja;
        ja["action_lo"] = a.action_lo;
        ja["action_hi"] = a.action_hi;
        ja["noise_sigma"] = a.noise_sigma;
        ja["actor"] = mlp_to_json(a.actor);
        ja["critic"] = mlp_to_json(a.critic);
        ja["target_actor"] = mlp_to_json(a.target_actor);
        ja["target_critic"] = mlp_to_json(a.target_critic);
        arr.push_back(std::move(ja));
    }
    j["agents"] = std::move(arr);
    j["bounds"] = {{"energy", range_to_json(bounds.energy)},
                   {"cost", range_to_json(bounds.cost)},
                   {"ep", range_to_json(bounds.ep)},
                   {"ghg", range_to_json(bounds.ghg)}};
    j["train_config"] = {{"gamma", tc.gamma},
                         {"tau", tc.tau},
                         {"batch_size", tc.batch_size},
                         {"total_steps", tc.total_steps},
                         {"buffer_capacity", tc.buffer_capacity},
                         {"actor_lr", tc.actor_lr},
                         {"critic_lr", tc.critic_lr},
                         {"noise_sigma0_frac", tc.noise_sigma0_frac},
                         {"noise_decay_per_epoch", tc.noise_decay_per_epoch},
                         {"epoch_intervals", tc.epoch_intervals},
                         {"hidden", tc.hidden},
                         {"seed", tc.seed},
                         {"bounds_samples", tc.bounds_samples}};
    return j.dump(2);
}

LoadedAgents agents_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("version").get<int>() != 1)
        throw std::invalid_argument("agents json: unsupported version");
    LoadedAgents out;
    const json& arr = j.at("agents");
    if (arr.size() != 2) throw std::invalid_argument("agents json: expected two agents");
    for (int i = 0; i < 2; ++i) {
        AgentNets& a = out.agents[i];
        const json& ja = arr[i];
        a.action_lo = ja.at("action_lo").get<double>();
        a.action_hi = ja.at("action_hi").get<double>();
        a.noise_sigma = ja.at("noise_sigma").get<double>();
        a.actor = mlp_from_json(ja.at("actor"));
        a.critic = mlp_from_json(ja.at("critic"));
        a.target_actor = mlp_from_json(ja.at("target_actor"));
        a.target_critic = mlp_from_json(ja.at("target_critic"));
    }
    const json& b = j.at("bounds");
    out.bounds.energy = range_from_json(b.at("energy"));
    out.bounds.cost = range_from_json(b.at("cost"));
    out.bounds.ep = range_from_json(b.at("ep"));
    out.bounds.ghg = range_from_json(b.at("ghg"));
    return out;
}

void save_agents(const std::string& path, const Agents& agents,
                 const impacts::NormalizationBounds& bounds, const TrainConfig& tc) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << agents_to_json(agents, bounds, tc) << '\n';
}

LoadedAgents load_agents(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return agents_from_json(text);
}

}  // namespace wwtp::marl
