import { ApiClient } from "./api";
import { mountApp } from "./app";

// The service origin can be overridden for local development, e.g.
// <body data-api-base="http://127.0.0.1:8000">.
const base = document.body.dataset.apiBase ?? "";
const root = document.getElementById("app");
if (root) void mountApp(root, new ApiClient(base));
