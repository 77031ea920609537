#pragma once

// Multimodal model access for layout comparison.

#include <atomic>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenelayout::eval {

struct Image {
    std::string media_type = "image/svg+xml";
    std::string data;  // raw bytes
};

struct ProviderRequest {
    std::string text;
    std::vector<Image> images;
};

class ProviderError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Provider {
public:
    virtual ~Provider() = default;
    // Returns the model's text reply. Throws ProviderError.
    virtual std::string send(const ProviderRequest& request) = 0;
};

// Deterministic stand-in driven by a rule over the request.
class MockProvider : public Provider {
public:
    using Rule = std::function<std::string(const ProviderRequest&)>;

    explicit MockProvider(Rule rule) : rule_(std::move(rule)) {}
    std::string send(const ProviderRequest& request) override { return rule_(request); }

    // Always replies `text`.
    static std::unique_ptr<MockProvider> constant(std::string text);
    // Replies with responses[k % n] on the k-th call.
    static std::unique_ptr<MockProvider> scripted(std::vector<std::string> responses);
    // Prefers the image with fewer highlighted violations (see
    // RenderOptions::highlight_violations); equal counts go to the image
    // with the smaller content hash, so the choice does not depend on order.
    static std::unique_ptr<MockProvider> fewest_violations();

private:
    Rule rule_;
};

// Number of objects marked as violating in a rendered SVG.
int count_marked_violations(const std::string& svg);

std::string base64_encode(std::string_view bytes);

// HTTP JSON endpoint.
//
// Request:  POST <url>  Authorization: Bearer <key>
//           {"model": ..., "prompt": ..., "images": [{"media_type": ..., "data": <base64>}]}
// Response: 200 {"text": ...}
struct RemoteConfig {
    std::string url;  // http://host[:port]/path
    std::string model;
    std::string api_key_env = "SCENELAYOUT_API_KEY";
    int timeout_seconds = 120;
};

class RemoteProvider : public Provider {
public:
    explicit RemoteProvider(RemoteConfig config);
    std::string send(const ProviderRequest& request) override;

private:
    RemoteConfig config_;
    std::string host_;
    int port_ = 80;
    std::string path_;
};

}  // namespace scenelayout::eval
