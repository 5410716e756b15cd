import { initApp } from "./app.js";

initApp(document.getElementById("app")!);
